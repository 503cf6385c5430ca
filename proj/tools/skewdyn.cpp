// skewdyn command-line front end: analyze, green, render, verify.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skewdyn/bottcher.hpp"
#include "skewdyn/config.hpp"
#include "skewdyn/mapfile.hpp"
#include "skewdyn/render.hpp"
#include "skewdyn/report.hpp"
#include "skewdyn/verify.hpp"

using namespace skewdyn;

namespace {

std::vector<double> split_numbers(const std::string& s, std::size_t expected, const char* what) {
    std::vector<double> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != item.size()) throw CLI::ValidationError(what, "bad number '" + item + "'");
        out.push_back(v);
    }
    if (expected != 0 && out.size() != expected) {
        throw CLI::ValidationError(what, "expected " + std::to_string(expected) + " comma-separated values");
    }
    return out;
}

Complex parse_complex(const std::string& s, const char* what) {
    const auto v = split_numbers(s, 2, what);
    return {v[0], v[1]};
}

std::vector<Rational> parse_rationals(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');) out.push_back(Rational::parse(item));
    return out;
}

struct CommonFlags {
    std::optional<int> n_max;
    std::optional<double> tol;
    std::optional<double> escape_radius;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;

    void add_to(CLI::App* app) {
        app->add_option("--n-max", n_max, "Iteration budget (env SKEWDYN_N_MAX, default 64)");
        app->add_option("--tol", tol, "Convergence tolerance on increments (env SKEWDYN_TOL, default 1e-10)");
        app->add_option("--escape-radius", escape_radius, "Escape radius (env SKEWDYN_ESCAPE_RADIUS, default 1e12)");
        app->add_option("--seed", seed, "Sampling seed (env SKEWDYN_SEED, default 1)");
        app->add_option("--threads", threads, "Worker threads for rasters (env SKEWDYN_THREADS, default 1)");
    }
    RunConfig config() const {
        RunConfig cfg = RunConfig::from_env();
        if (n_max) cfg.n_max = *n_max;
        if (tol) cfg.tol = *tol;
        if (escape_radius) cfg.escape_radius = *escape_radius;
        if (seed) cfg.seed = *seed;
        if (threads) cfg.threads = *threads;
        cfg.validate();
        return cfg;
    }
};

// Wedge flags shared by green --function bottcher and verify.
struct WedgeFlags {
    std::string family;
    std::string weights;
    std::string radii;

    void add_to(CLI::App* app, const std::string& purpose) {
        app->add_option("--wedge", family, "Wedge family for " + purpose +
                                               ": U_l, U_r1r2_l, U_l_plus, U_l1l2, V_l, S_out, S_in");
        app->add_option("--weights", weights, "Wedge weights l or l,l_second (exact fractions allowed)");
        app->add_option("--radii", radii, "Wedge radii r[,r2[,r3]]");
    }
    WedgeSpec spec() const {
        WedgeSpec s;
        s.family = parse_wedge_family(family);
        const auto w = parse_rationals(weights.empty() ? "0" : weights);
        if (w.empty() || w.size() > 2) throw CLI::ValidationError("--weights", "expected l or l,l_second");
        s.l = w[0];
        if (w.size() == 2) s.l_second = w[1];
        if (s.family == WedgeFamily::U_l1l2 && w.size() != 2) {
            throw CLI::ValidationError("--weights", "U_l1l2 needs l,l_second");
        }
        if (!radii.empty()) {
            const auto r = split_numbers(radii, 0, "--radii");
            if (r.empty() || r.size() > 3) throw CLI::ValidationError("--radii", "expected r[,r2[,r3]]");
            s.r = r[0];
            if (r.size() > 1) s.r2 = r[1];
            if (r.size() > 2) s.r3 = r[2];
        }
        s.validate();
        return s;
    }
};

struct Grid {
    double x0, x1, y0, y1;
    int nx, ny;
};

Grid parse_grid(const std::string& s) {
    const auto v = split_numbers(s, 6, "--grid");
    Grid g{v[0], v[1], v[2], v[3], static_cast<int>(v[4]), static_cast<int>(v[5])};
    if (g.nx < 1 || g.ny < 1 || g.nx != v[4] || g.ny != v[5] || g.nx > kMaxPixelsPerSide || g.ny > kMaxPixelsPerSide) {
        throw CLI::ValidationError("--grid", "counts must be integers in [1, 8192]");
    }
    return g;
}

double grid_coord(double a, double b, int k, int n) { return n == 1 ? a : a + (b - a) * k / (n - 1); }

int run_green(const std::string& file, const std::string& function, const std::string& point,
              const std::string& grid, const std::string& slice_name, const std::string& fixed,
              const std::string& out_path, const WedgeFlags& wf, const RunConfig& cfg) {
    const MapSource src = load_map_file(file);
    const SkewProduct& f = src.map;
    const Classification c = classify(f);

    std::vector<Point2> pts;
    if (!point.empty()) {
        const auto v = split_numbers(point, 4, "--point");
        pts.push_back({{v[0], v[1]}, {v[2], v[3]}});
    } else {
        const Grid g = parse_grid(grid);
        const Slice slice = parse_slice(slice_name);
        const Complex fx = parse_complex(fixed, "--fixed");
        for (int iy = 0; iy < g.ny; ++iy) {
            for (int ix = 0; ix < g.nx; ++ix) {
                const Complex u(grid_coord(g.x0, g.x1, ix, g.nx), grid_coord(g.y0, g.y1, iy, g.ny));
                pts.push_back(slice == Slice::fiber ? Point2{fx, u} : Point2{u, fx});
            }
        }
    }

    std::ofstream file_out;
    if (!out_path.empty()) {
        file_out.open(out_path, std::ios::binary);
        if (!file_out) throw std::runtime_error("cannot write " + out_path);
    }
    std::ostream& out = out_path.empty() ? std::cout : file_out;
    auto d = [](double v) { return format_double(v); };

    bool warned = false;
    if (function == "bottcher") {
        const WedgeSpec wedge = wf.family.empty() ? dominant_wedge(c, 0.1) : wf.spec();
        BottcherOptions bo;
        bo.n_max = cfg.n_max;
        out << "z_re,z_im,w_re,w_im,phi1_re,phi1_im,phi2_re,phi2_im,n_used,conj_residual,id_deviation,status\n";
        for (const auto& p : pts) {
            out << d(p.z.real()) << ',' << d(p.z.imag()) << ',' << d(p.w.real()) << ',' << d(p.w.imag()) << ',';
            try {
                const BottcherEstimate e = bottcher(f, c, wedge, p.z, p.w, bo);
                if (e.no_theorem && !warned) {
                    std::cerr << "warning: no convergence theorem covers this regime\n";
                    warned = true;
                }
                out << d(e.phi1.real()) << ',' << d(e.phi1.imag()) << ',' << d(e.phi2.real()) << ','
                    << d(e.phi2.imag()) << ',' << e.n_used << ',' << d(e.conj_residual) << ','
                    << d(e.id_deviation) << ",ok\n";
            } catch (const std::domain_error& e) {
                out << "nan,nan,nan,nan,0,nan,nan,\"" << e.what() << "\"\n";
            }
        }
    } else {
        const GreenFunction g = parse_green_function(function);
        if (no_convergence_theorem(c)) std::cerr << "warning: no convergence theorem covers this regime\n";
        const GreenOptions opt = cfg.green();
        out << "z_re,z_im,w_re,w_im,value,n_used,termination,residual\n";
        for (const auto& p : pts) {
            out << d(p.z.real()) << ',' << d(p.z.imag()) << ',' << d(p.w.real()) << ',' << d(p.w.imag()) << ',';
            try {
                const GreenEstimate e = evaluate(g, f, c, p.z, p.w, opt);
                out << d(e.value) << ',' << e.n_used << ',' << to_string(e.termination) << ',' << d(e.residual)
                    << '\n';
            } catch (const std::domain_error& e) {
                out << "nan,0,undefined,nan\n";
                if (!warned) {
                    std::cerr << "warning: " << e.what() << '\n';
                    warned = true;
                }
            }
        }
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newton polygons, weighted Green functions and Bottcher coordinates of polynomial skew products"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "skewdyn 1.0.0");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Classification report in key: value form");
    std::string an_file, an_blowup, an_weights;
    analyze->add_option("file", an_file, "Map file")->required()->check(CLI::ExistingFile);
    analyze->add_option("--blowup", an_blowup, "Add the blow-up section for weight l");
    analyze->add_option("--weights", an_weights, "Comma-separated weights l; prints D_l for each");

    // green
    auto* green = app.add_subcommand("green", "Evaluate a Green function or Bottcher coordinates");
    std::string gr_file, gr_function, gr_point, gr_grid, gr_slice = "fiber", gr_fixed = "0.5,0", gr_out;
    CommonFlags gr_common;
    WedgeFlags gr_wedge;
    green->add_option("file", gr_file, "Map file")->required()->check(CLI::ExistingFile);
    green->add_option("--function", gr_function, "Gp, Gza, Gzi, Gzap, Gz, Gf, Gfa or bottcher")->required();
    auto* opt_point = green->add_option("--point", gr_point, "Single point z_re,z_im,w_re,w_im");
    auto* opt_grid = green->add_option("--grid", gr_grid, "Grid xmin,xmax,ymin,ymax,nx,ny over the swept coordinate");
    opt_point->excludes(opt_grid);
    green->add_option("--slice", gr_slice, "Grid slice: fiber sweeps w at fixed z, zplane sweeps z at fixed w")
        ->capture_default_str();
    green->add_option("--fixed", gr_fixed, "Fixed coordinate re,im for --grid")->capture_default_str();
    green->add_option("--out", gr_out, "CSV output path (stdout when omitted)");
    gr_wedge.add_to(green, "bottcher (dominant wedge with r=0.1 when omitted)");
    gr_common.add_to(green);

    // render
    auto* render_cmd = app.add_subcommand("render", "Rasterize a Green function to PGM, CSV and meta files");
    std::string re_file, re_function = "Gzap", re_slice = "fiber", re_fixed = "0.5,0", re_center = "0,0",
                         re_extent = "2,2", re_pixels = "64,64", re_clamp, re_out = "render";
    CommonFlags re_common;
    render_cmd->add_option("file", re_file, "Map file")->required()->check(CLI::ExistingFile);
    render_cmd->add_option("--function", re_function, "Gp, Gza, Gzi, Gzap, Gz, Gf, Gfa")->capture_default_str();
    render_cmd->add_option("--slice", re_slice, "fiber or zplane")->capture_default_str();
    render_cmd->add_option("--fixed", re_fixed, "Fixed coordinate re,im")->capture_default_str();
    render_cmd->add_option("--center", re_center, "Window center re,im")->capture_default_str();
    render_cmd->add_option("--extent", re_extent, "Window width,height")->capture_default_str();
    render_cmd->add_option("--pixels", re_pixels, "Pixel counts nx,ny (each at most 8192)")->capture_default_str();
    render_cmd->add_option("--clamp", re_clamp, "Affine clamp lo,hi (finite value range when omitted)");
    render_cmd->add_option("--out", re_out, "Output base path")->capture_default_str();
    re_common.add_to(render_cmd);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Run invariant suites or a wedge invariance check");
    std::string ve_suite = "all", ve_map;
    std::uint64_t ve_samples = 10000;
    CommonFlags ve_common;
    WedgeFlags ve_wedge;
    verify_cmd->add_option("--suite", ve_suite, "monomial, hull, invariance, semiconjugate or all")
        ->capture_default_str();
    verify_cmd->add_option("--map", ve_map, "Map file for a --wedge invariance check")->check(CLI::ExistingFile);
    verify_cmd->add_option("--samples", ve_samples, "Samples for a --wedge invariance check")->capture_default_str();
    ve_wedge.add_to(verify_cmd, "a single invariance check on --map");
    ve_common.add_to(verify_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            const MapSource src = load_map_file(an_file);
            std::vector<Rational> weights;
            if (!an_weights.empty()) weights = parse_rationals(an_weights);
            std::optional<Rational> bl;
            if (!an_blowup.empty()) bl = Rational::parse(an_blowup);
            std::cout << "source: " << an_file << '\n' << analyze_report(src.map, weights, bl);
            return 0;
        }
        if (green->parsed()) {
            if (gr_point.empty() && gr_grid.empty()) throw CLI::ValidationError("green", "--point or --grid is required");
            return run_green(gr_file, gr_function, gr_point, gr_grid, gr_slice, gr_fixed, gr_out, gr_wedge,
                             gr_common.config());
        }
        if (render_cmd->parsed()) {
            RenderJob job(load_map_file(re_file), re_file);
            job.function = parse_green_function(re_function);
            job.slice = parse_slice(re_slice);
            job.fixed = parse_complex(re_fixed, "--fixed");
            job.center = parse_complex(re_center, "--center");
            const auto ext = split_numbers(re_extent, 2, "--extent");
            job.width = ext[0];
            job.height = ext[1];
            const auto px = split_numbers(re_pixels, 2, "--pixels");
            job.pixels_x = static_cast<int>(px[0]);
            job.pixels_y = static_cast<int>(px[1]);
            if (job.pixels_x != px[0] || job.pixels_y != px[1]) throw CLI::ValidationError("--pixels", "integers");
            if (!re_clamp.empty()) {
                const auto cl = split_numbers(re_clamp, 2, "--clamp");
                job.clamp = std::make_pair(cl[0], cl[1]);
            }
            job.out_base = re_out;
            const RenderResult r = render(job, re_common.config());
            std::cout << "wrote " << re_out << ".pgm, " << re_out << ".csv, " << re_out << ".meta (" << r.values.size()
                      << " pixels)\n";
            return 0;
        }
        if (verify_cmd->parsed()) {
            const RunConfig cfg = ve_common.config();
            if (!ve_wedge.family.empty()) {
                if (ve_map.empty()) throw CLI::ValidationError("verify", "--wedge needs --map");
                const MapSource src = load_map_file(ve_map);
                return run_invariance(src.map, ve_wedge.spec(), ve_samples, cfg.seed, std::cout) ? 0 : 1;
            }
            const bool ok = run_suite(ve_suite, cfg, std::cout);
            std::cout << "verify " << ve_suite << ": " << (ok ? "PASS" : "FAIL") << '\n';
            return ok ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
