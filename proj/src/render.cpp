#include "skewdyn/render.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace skewdyn {

std::string to_string(Slice s) { return s == Slice::fiber ? "fiber" : "zplane"; }

Slice parse_slice(const std::string& name) {
    if (name == "fiber") return Slice::fiber;
    if (name == "zplane") return Slice::zplane;
    throw std::invalid_argument("unknown slice '" + name + "' (fiber, zplane)");
}

void RenderJob::validate() const {
    if (pixels_x < 1 || pixels_y < 1 || pixels_x > kMaxPixelsPerSide || pixels_y > kMaxPixelsPerSide) {
        throw std::invalid_argument("pixel counts must lie in [1, " + std::to_string(kMaxPixelsPerSide) + "]");
    }
    if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height)) {
        throw std::invalid_argument("window width and height must be positive");
    }
    if (clamp && !(clamp->first < clamp->second)) throw std::invalid_argument("clamp needs lo < hi");
    if (out_base.empty()) throw std::invalid_argument("empty output path");
}

Complex RenderJob::pixel_coordinate(int ix, int iy) const {
    const double x = center.real() - width / 2 + (ix + 0.5) * width / pixels_x;
    const double y = center.imag() + height / 2 - (iy + 0.5) * height / pixels_y;
    return {x, y};
}

std::uint8_t palette(double value, double lo, double hi) {
    if (std::isnan(value)) return 128;
    if (value == HUGE_VAL) return 255;
    if (value == -HUGE_VAL) return 0;
    const double t = std::clamp((value - lo) / (hi - lo), 0.0, 1.0);
    return static_cast<std::uint8_t>(std::lround(255.0 * t));
}

RenderResult render_values(const RenderJob& job, const RunConfig& cfg) {
    job.validate();
    cfg.validate();
    const SkewProduct& f = job.source.map;
    const Classification c = classify(f);
    const GreenOptions opt = cfg.green();
    RenderResult out;
    out.values.resize(static_cast<std::size_t>(job.pixels_x) * job.pixels_y);

    std::atomic<int> next_row{0};
    auto worker = [&] {
        for (int iy; (iy = next_row.fetch_add(1)) < job.pixels_y;) {
            for (int ix = 0; ix < job.pixels_x; ++ix) {
                const Complex u = job.pixel_coordinate(ix, iy);
                const Complex z = job.slice == Slice::fiber ? job.fixed : u;
                const Complex w = job.slice == Slice::fiber ? u : job.fixed;
                GreenEstimate e;
                try {
                    e = evaluate(job.function, f, c, z, w, opt);
                } catch (const std::domain_error&) {
                    e.value = std::nan("");
                }
                out.values[static_cast<std::size_t>(iy) * job.pixels_x + ix] = e;
            }
        }
    };
    const int n_threads = std::min(cfg.threads, job.pixels_y);
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    if (job.clamp) {
        out.clamp_lo = job.clamp->first;
        out.clamp_hi = job.clamp->second;
    } else {
        double lo = HUGE_VAL, hi = -HUGE_VAL;
        for (const auto& e : out.values) {
            if (std::isfinite(e.value)) {
                lo = std::min(lo, e.value);
                hi = std::max(hi, e.value);
            }
        }
        if (lo > hi) {
            lo = 0.0;
            hi = 1.0;
        } else if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
        out.clamp_lo = lo;
        out.clamp_hi = hi;
    }
    out.gray.reserve(out.values.size());
    for (const auto& e : out.values) out.gray.push_back(palette(e.value, out.clamp_lo, out.clamp_hi));
    return out;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    return f;
}

void finish(std::ofstream& f, const std::string& path) {
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

RenderResult render(const RenderJob& job, const RunConfig& cfg) {
    RenderResult res = render_values(job, cfg);

    const std::string pgm_path = job.out_base + ".pgm";
    auto pgm = open_out(pgm_path);
    pgm << "P5\n" << job.pixels_x << ' ' << job.pixels_y << "\n255\n";
    pgm.write(reinterpret_cast<const char*>(res.gray.data()), static_cast<std::streamsize>(res.gray.size()));
    finish(pgm, pgm_path);

    const std::string csv_path = job.out_base + ".csv";
    auto csv = open_out(csv_path);
    csv << "pixel,ix,iy,z_re,z_im,w_re,w_im,value,n_used,termination,residual\n";
    for (int iy = 0; iy < job.pixels_y; ++iy) {
        for (int ix = 0; ix < job.pixels_x; ++ix) {
            const std::size_t k = static_cast<std::size_t>(iy) * job.pixels_x + ix;
            const Complex u = job.pixel_coordinate(ix, iy);
            const Complex z = job.slice == Slice::fiber ? job.fixed : u;
            const Complex w = job.slice == Slice::fiber ? u : job.fixed;
            const auto& e = res.values[k];
            csv << k << ',' << ix << ',' << iy << ',' << format_double(z.real()) << ',' << format_double(z.imag())
                << ',' << format_double(w.real()) << ',' << format_double(w.imag()) << ','
                << format_double(e.value) << ',' << e.n_used << ','
                << (std::isnan(e.value) ? std::string("undefined") : to_string(e.termination)) << ','
                << format_double(e.residual) << '\n';
        }
    }
    finish(csv, csv_path);

    const std::string meta_path = job.out_base + ".meta";
    auto meta = open_out(meta_path);
    meta << "source: " << job.source_label << '\n'
         << "map_hash: " << hex64(map_hash(job.source.map)) << '\n'
         << "function: " << to_string(job.function) << '\n'
         << "slice: " << to_string(job.slice) << '\n'
         << "fixed: " << format_double(job.fixed.real()) << ',' << format_double(job.fixed.imag()) << '\n'
         << "center: " << format_double(job.center.real()) << ',' << format_double(job.center.imag()) << '\n'
         << "width: " << format_double(job.width) << '\n'
         << "height: " << format_double(job.height) << '\n'
         << "pixels: " << job.pixels_x << ',' << job.pixels_y << '\n'
         << "clamp: " << format_double(res.clamp_lo) << ',' << format_double(res.clamp_hi)
         << (job.clamp ? " (given)" : " (from finite values)") << '\n'
         << "palette: gray = round(255 * clamp01((value - lo) / (hi - lo))); -inf -> 0; +inf -> 255; "
            "nan or undefined -> 128\n"
         << "row_order: top row first, imaginary part decreasing\n"
         << "config: " << cfg.str() << '\n';
    finish(meta, meta_path);
    return res;
}

}  // namespace skewdyn
