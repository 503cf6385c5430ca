#include "skewdyn/regions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skewdyn/config.hpp"
#include "skewdyn/logspace.hpp"

namespace skewdyn {

using namespace logspace;

namespace {
constexpr double kInf = HUGE_VAL;

// l * log|z| with z^0 = 1.
double weighted(double l, double lz) { return l == 0.0 ? 0.0 : l * lz; }

double log_abs(Complex x) { return x == Complex(0.0, 0.0) ? -kInf : std::log(std::abs(x)); }

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t x = (state += 0x9E3779B97F4A7C15ULL);
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Uniform in the open interval (0, 1).
double open_unit(std::uint64_t& state) { return (static_cast<double>(splitmix64(state) >> 11) + 0.5) * 0x1.0p-53; }

// Orbit of f carried as (log z, log w) without any factorization.
class LogOrbit {
public:
    LogOrbit(const SkewProduct& f, Complex z, Complex w) : lz_(log_of(z)), lw_(log_of(w)) {
        for (const auto& [k, a] : f.p().terms()) p_.push_back({k, 0, std::log(a)});
        for (const auto& [e, b] : f.q().terms()) q_.push_back({e.first, e.second, std::log(b)});
    }
    void step() {
        Accumulator pz, qw;
        for (const auto& t : p_) pz.add(t.log_coef + scale(t.i, lz_));
        for (const auto& t : q_) qw.add(t.log_coef + scale(t.i, lz_) + scale(t.j, lw_));
        lz_ = reduce_arg(pz.result());
        lw_ = reduce_arg(qw.result());
    }
    Complex log_z() const { return lz_; }
    Complex log_w() const { return lw_; }

private:
    struct Term {
        int i, j;
        Complex log_coef;
    };
    std::vector<Term> p_, q_;
    Complex lz_, lw_;
};

}  // namespace

std::string to_string(WedgeFamily f) {
    switch (f) {
        case WedgeFamily::U_l: return "U_l";
        case WedgeFamily::U_r1r2_l: return "U_r1r2_l";
        case WedgeFamily::U_l_plus: return "U_l_plus";
        case WedgeFamily::U_l1l2: return "U_l1l2";
        case WedgeFamily::V_l: return "V_l";
        case WedgeFamily::S_out: return "S_out";
        case WedgeFamily::S_in: return "S_in";
    }
    return "?";
}

WedgeFamily parse_wedge_family(const std::string& name) {
    for (auto f : {WedgeFamily::U_l, WedgeFamily::U_r1r2_l, WedgeFamily::U_l_plus, WedgeFamily::U_l1l2,
                   WedgeFamily::V_l, WedgeFamily::S_out, WedgeFamily::S_in}) {
        if (to_string(f) == name) return f;
    }
    throw std::invalid_argument("unknown wedge family: " + name);
}

void WedgeSpec::validate() const {
    auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
    if (!positive(r)) throw std::invalid_argument("wedge: r must be positive");
    if (family == WedgeFamily::U_r1r2_l && !positive(r2)) throw std::invalid_argument("wedge: r2 must be positive");
    if (family == WedgeFamily::V_l && !positive(r3)) throw std::invalid_argument("wedge: r3 must be positive");
    if (l < Rational(0)) throw std::invalid_argument("wedge: weight must be non-negative");
    if (family == WedgeFamily::U_l1l2 && !(l_second > Rational(0))) {
        throw std::invalid_argument("wedge: second weight must be positive");
    }
    if ((family == WedgeFamily::S_out || family == WedgeFamily::S_in) && !(l > Rational(0))) {
        throw std::invalid_argument("wedge: surfaces need a positive weight");
    }
    if (!(band > 0.0)) throw std::invalid_argument("wedge: band must be positive");
}

std::string WedgeSpec::str() const {
    std::string s = to_string(family) + " l=" + l.str();
    if (family == WedgeFamily::U_l1l2) s += " l_second=" + l_second.str();
    s += " r=" + format_double(r);
    if (family == WedgeFamily::U_r1r2_l) s += " r2=" + format_double(r2);
    if (family == WedgeFamily::V_l) s += " r3=" + format_double(r3);
    return s;
}

bool contains_log(const WedgeSpec& s, double lz, double lw) {
    const double lr = std::log(s.r);
    const double l = s.l.to_double();
    switch (s.family) {
        case WedgeFamily::U_l:
        case WedgeFamily::U_l_plus: return lz < lr && lw < lr + weighted(l, lz);
        case WedgeFamily::U_r1r2_l: return lz < lr && lw < std::log(s.r2) + weighted(l, lz);
        case WedgeFamily::U_l1l2: {
            const double l2 = s.l_second.to_double();
            return weighted(l + l2, lz) < l2 * lr + lw && lw < lr + weighted(l, lz);
        }
        case WedgeFamily::V_l:
            return lz > -kInf && lz < lr && lw >= lr + weighted(l, lz) && lw < std::log(s.r3);
        case WedgeFamily::S_out: return l * lz < l * lr + lw && std::abs(lw - lr) <= s.band;
        case WedgeFamily::S_in: return std::abs(l * lz - (l * lr + lw)) <= s.band && lw < lr;
    }
    return false;
}

bool contains(const WedgeSpec& spec, Complex z, Complex w) { return contains_log(spec, log_abs(z), log_abs(w)); }

WedgeSpec dominant_wedge(const Classification& c, double r) {
    WedgeSpec s;
    s.r = r;
    switch (c.case_tag) {
        case CaseTag::Case1: s.family = WedgeFamily::U_l; s.l = Rational(0); break;
        case CaseTag::Case2: s.family = WedgeFamily::U_l; s.l = c.l1; break;
        case CaseTag::Case3:
            s.family = WedgeFamily::U_l1l2;
            s.l = Rational(0);
            s.l_second = *c.l2;
            break;
        case CaseTag::Case4:
            s.family = WedgeFamily::U_l1l2;
            s.l = c.l1;
            s.l_second = *c.l2;
            break;
    }
    return s;
}

Point2 sample_point(const WedgeSpec& s, std::uint64_t seed, std::uint64_t index) {
    s.validate();
    std::uint64_t state = seed * 0xD1B54A32D192ED03ULL ^ splitmix64(index);
    const double l = s.l.to_double();
    const double lr = std::log(s.r);
    constexpr double kDepth = 9.210340371976184;  // log 1e4: |z| spans four decades below its bound
    for (int attempt = 0; attempt < 256; ++attempt) {
        const double u1 = open_unit(state), u2 = open_unit(state);
        const double t1 = kTwoPi * open_unit(state), t2 = kTwoPi * open_unit(state);
        double lz_max = lr, mod_w = 0.0;
        switch (s.family) {
            case WedgeFamily::U_l1l2: lz_max = lr * (1.0 + 1.0 / s.l_second.to_double()); break;
            case WedgeFamily::S_out:
            case WedgeFamily::S_in: lz_max = lr * (1.0 + 1.0 / l); break;
            default: break;
        }
        double lz = lz_max - kDepth * u1;
        switch (s.family) {
            case WedgeFamily::U_l:
            case WedgeFamily::U_l_plus: mod_w = u2 * std::exp(lr + weighted(l, lz)); break;
            case WedgeFamily::U_r1r2_l: mod_w = u2 * std::exp(std::log(s.r2) + weighted(l, lz)); break;
            case WedgeFamily::U_l1l2: {
                const double l2 = s.l_second.to_double();
                const double lo = std::exp(weighted(l + l2, lz) - l2 * lr);
                const double hi = std::exp(lr + weighted(l, lz));
                mod_w = lo + u2 * (hi - lo);
                break;
            }
            case WedgeFamily::V_l: {
                const double lo = std::exp(lr + weighted(l, lz));
                mod_w = lo + u2 * (s.r3 - lo);
                break;
            }
            case WedgeFamily::S_out: mod_w = s.r; break;
            case WedgeFamily::S_in:
                mod_w = u2 * s.r;
                lz = lr + std::log(mod_w) / l;
                break;
        }
        const Point2 p{std::polar(std::exp(lz), t1), std::polar(mod_w, t2)};
        if (contains(s, p.z, p.w)) return p;
    }
    throw std::runtime_error("sample_point: could not draw a point inside " + s.str());
}

InvarianceReport verify_invariance(const SkewProduct& f, const WedgeSpec& spec, std::uint64_t first,
                                   std::uint64_t count, std::uint64_t seed, std::size_t max_witnesses) {
    InvarianceReport rep;
    for (std::uint64_t i = first; i < first + count; ++i) {
        const Point2 p = sample_point(spec, seed, i);
        const Point2 img = eval_skew(f, p.z, p.w);
        ++rep.samples;
        if (!img.finite() || !contains(spec, img.z, img.w)) {
            ++rep.violations;
            if (rep.witnesses.size() < max_witnesses) rep.witnesses.push_back({i, p, img});
        }
    }
    return rep;
}

InvarianceReport verify_invariance(const SkewProduct& f, const WedgeSpec& spec, std::uint64_t samples,
                                   std::uint64_t seed) {
    return verify_invariance(f, spec, 0, samples, seed);
}

std::string to_string(BasinKind k) {
    switch (k) {
        case BasinKind::in_A0_and_Afl: return "in_A0_and_Afl";
        case BasinKind::in_A0_not_yet_Afl: return "in_A0_not_yet_Afl";
        case BasinKind::escapes_or_outside: return "escapes_or_outside";
        case BasinKind::on_Ez: return "on_Ez";
        case BasinKind::near_Edeg: return "near_Edeg";
    }
    return "?";
}

BasinLabel classify_point(const SkewProduct& f, const Classification& c, const WedgeSpec& spec, Complex z,
                          Complex w, int budget, const ClassifyOptions& opt) {
    (void)c;
    if (budget < 1) throw std::invalid_argument("classify_point: budget must be >= 1");
    spec.validate();
    const double rho0 = std::min(spec.r, 0.05);
    const double log_rho0 = std::log(rho0);
    const double log_work = std::log(opt.work_radius);
    LogOrbit orb(f, z, w);
    BasinLabel out;
    int streak = 0;
    double prev_z = kInf, prev_w = kInf;
    for (int n = 0;; ++n) {
        const double lz = orb.log_z().real();
        const double lw = orb.log_w().real();
        if (lz == -kInf) {
            out.label = BasinKind::on_Ez;
            return out;
        }
        if (contains_log(spec, lz, lw)) {
            out.label = BasinKind::in_A0_and_Afl;
            out.entry_step = n;
            return out;
        }
        if (lz >= log_rho0 && lz < log_work) {
            const auto cols = f.q().fiber_coefficients(std::exp(orb.log_z()));
            bool degenerate = cols.size() > 1;
            for (std::size_t j = 1; j < cols.size(); ++j) degenerate = degenerate && std::abs(cols[j]) < opt.deg_epsilon;
            if (degenerate) {
                out.label = BasinKind::near_Edeg;
                return out;
            }
        }
        if (std::max(lz, lw) > log_work || std::isnan(lz) || std::isnan(lw)) {
            out.label = BasinKind::escapes_or_outside;
            return out;
        }
        const bool near = lz < log_rho0 && lw < log_rho0;
        streak = near && lz < prev_z && (lw < prev_w || lw == -kInf) ? streak + 1 : 0;
        if (streak >= opt.decay_steps) out.a0_detected = true;
        prev_z = lz;
        prev_w = lw;
        if (n == budget) break;
        orb.step();
    }
    out.undecided = true;
    out.label = out.a0_detected ? BasinKind::in_A0_not_yet_Afl : BasinKind::escapes_or_outside;
    return out;
}

std::vector<ProbeSample> boundary_probe(const SkewProduct& f, const Classification& c, const WedgeSpec& spec,
                                        Complex z0, Complex direction, int steps, const ProbeOptions& opt) {
    if (steps < 1) throw std::invalid_argument("boundary_probe: steps must be >= 1");
    if (direction == Complex(0.0, 0.0)) throw std::invalid_argument("boundary_probe: zero direction");
    const GreenEstimate gp = G_p(f.p(), z0, opt.green);
    if (!(std::isfinite(gp.value) && gp.value < 0.0)) {
        throw std::domain_error("boundary_probe: the p-orbit of z0 does not decay to 0 without hitting it");
    }
    const Complex dir = direction / std::abs(direction);
    auto label_at = [&](double t) { return classify_point(f, c, spec, z0, t * dir, opt.budget, opt.classify); };
    auto inside = [&](double t) { return label_at(t).label == BasinKind::in_A0_and_Afl; };

    const double ratio = std::log(opt.t_max / opt.t_min) / (opt.scan_points - 1);
    double t_prev = opt.t_min;
    bool in_prev = inside(t_prev);
    double lo = 0.0, hi = 0.0;
    bool lo_inside = false, found = false;
    for (int k = 1; k < opt.scan_points; ++k) {
        const double t = opt.t_min * std::exp(ratio * k);
        const bool in = inside(t);
        if (in != in_prev) {
            lo = t_prev;
            hi = t;
            lo_inside = in_prev;
            found = true;
            break;
        }
        t_prev = t;
        in_prev = in;
    }
    if (!found) throw std::runtime_error("boundary_probe: no boundary bracketed in the fiber window");

    const double t_start = lo_inside ? lo : hi;  // inside witness from the scan
    for (int k = 0; k < opt.bisection_steps; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (inside(mid) == lo_inside ? lo : hi) = mid;
    }
    const double t_b = 0.5 * (lo + hi);

    auto green_at = [&](Complex w) {
        if (c.alpha) return G_z_alpha(f, c, z0, w, opt.green);
        return G_z_infty(f, c, z0, w, opt.green);
    };
    std::vector<ProbeSample> out;
    for (int k = 0; k < steps; ++k) {
        const double t = t_b + (t_start - t_b) * std::ldexp(1.0, -k);
        const Complex w = t * dir;
        out.push_back({{z0, w}, label_at(t), green_at(w)});
    }
    out.push_back({{z0, t_b * dir}, label_at(t_b), green_at(t_b * dir)});
    return out;
}

}  // namespace skewdyn
