#include "skewdyn/bottcher.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "skewdyn/green.hpp"
#include "skewdyn/logspace.hpp"
#include "weighted_orbit.hpp"

namespace skewdyn {

using namespace logspace;

MonomialModel MonomialModel::of(const SkewProduct& f, const Classification& c) {
    return {f.delta(), c.gamma, c.d, f.a(), f.q().coefficient(c.gamma, c.d)};
}

namespace {

// Root of x^k = exp(l) nearest in argument to ref, or the principal one.
Complex nearest_root(Complex l, int k, const Complex* ref) {
    const Complex principal{l.real() / k, std::remainder(l.imag(), kTwoPi) / k};
    if (!ref) return principal;
    const double sector = kTwoPi / k;
    const double shift = std::round(std::remainder(ref->imag() - principal.imag(), kTwoPi) / sector);
    return reduce_arg(principal + Complex(0.0, shift * sector));
}

double rel_dev(Complex log_ratio) {
    const Complex e = std::exp(log_ratio) - 1.0;
    return std::abs(log_ratio) < 1e-8 ? std::abs(log_ratio + 0.5 * log_ratio * log_ratio) : std::abs(e);
}

struct Telescope {
    Complex s1{0.0, 0.0};
    Complex s2{0.0, 0.0};
    int n = 0;
};

Telescope telescope(const SkewProduct& f, const Classification& c, const WedgeSpec& wedge, Complex z, Complex w,
                    const BottcherOptions& opt) {
    if (!contains(wedge, z, w)) throw std::domain_error("bottcher: the point is outside the wedge");
    const int delta = f.delta();
    const int d = c.d;
    const double alpha = c.alpha ? c.alpha_real() : 0.0;
    detail::WeightedOrbit orb(f, {c.gamma, d}, [](int) { return Rational(0); }, z, w);
    Telescope t;
    int small = 0;
    for (int n = 0; n < opt.n_max; ++n) {
        if (orb.step() != detail::WeightedOrbit::Status::ok || !orb.last_step_factored()) {
            throw std::domain_error("bottcher: orbit reached a coordinate axis at step " + std::to_string(n + 1));
        }
        const Complex le = orb.last_log_eta();
        const Complex lzeta = orb.last_log_zeta();
        const double dz = std::pow(static_cast<double>(delta), -(n + 1));
        const double dw = std::pow(static_cast<double>(d), -(n + 1));
        // Weight of log(1 + eta_n) in log(phi2 / w): minus gamma times
        // sum_{k <= n} d^-(k+1) delta^-(n-k+1).
        const double cross = delta != d ? alpha * (dw - dz) : c.gamma * (n + 1) * dw / d;
        const Complex t1 = dz * le;
        const Complex t2 = dw * lzeta - cross * le;
        t.s1 += t1;
        t.s2 += t2;
        t.n = n + 1;
        if (!contains_log(wedge, orb.log_z().real(), orb.log_w().real())) {
            throw std::domain_error("bottcher: orbit leaves the wedge at step " + std::to_string(n + 1));
        }
        small = std::max(std::abs(t1), std::abs(t2)) < opt.tol ? small + 1 : 0;
        if (small >= 2) break;
    }
    return t;
}

}  // namespace

LogPoint monomial_inverse_log(const MonomialModel& m, int n, LogPoint target, const std::vector<LogPoint>& refs) {
    if (n < 0) throw std::invalid_argument("monomial_inverse: n must be >= 0");
    if (m.d < 1) throw std::domain_error("monomial_inverse: needs d >= 1");
    const Complex la = std::log(m.a), lb = std::log(m.b);
    LogPoint cur = target;
    for (int level = n - 1; level >= 0; --level) {
        if (is_zero(cur.lz) || is_zero(cur.lw)) throw std::domain_error("monomial_inverse: zero coordinate");
        const LogPoint* ref = static_cast<std::size_t>(level) < refs.size() ? &refs[static_cast<std::size_t>(level)] : nullptr;
        const Complex lz = nearest_root(cur.lz - la, m.delta, ref ? &ref->lz : nullptr);
        const Complex lw = nearest_root(cur.lw - lb - scale(m.gamma, lz), m.d, ref ? &ref->lw : nullptr);
        cur = {lz, lw};
    }
    return cur;
}

Point2 monomial_inverse(const MonomialModel& m, int n, Complex Z, Complex W, const std::vector<Point2>& refs) {
    if (Z == Complex(0.0, 0.0) || W == Complex(0.0, 0.0)) throw std::domain_error("monomial_inverse: zero input");
    std::vector<LogPoint> lrefs;
    for (const auto& p : refs) lrefs.push_back({log_of(p.z), log_of(p.w)});
    if (n == 0) return {Z, W};
    const LogPoint r = monomial_inverse_log(m, n, {std::log(Z), std::log(W)}, lrefs);
    return {std::exp(r.lz), std::exp(r.lw)};
}

BottcherEstimate bottcher(const SkewProduct& f, const Classification& c, const WedgeSpec& wedge, Complex z, Complex w,
                          const BottcherOptions& opt) {
    if (c.d < 1) throw std::domain_error("bottcher: needs d >= 1");
    const Telescope t0 = telescope(f, c, wedge, z, w, opt);
    BottcherEstimate e;
    e.log_factor1 = t0.s1;
    e.log_factor2 = t0.s2;
    e.phi1 = z * std::exp(t0.s1);
    e.phi2 = w * std::exp(t0.s2);
    e.n_used = t0.n;
    e.no_theorem = no_convergence_theorem(c);
    e.id_deviation = std::max(rel_dev(t0.s1), rel_dev(t0.s2));

    const Point2 img = eval_skew(f, z, w);
    const Telescope t1 = telescope(f, c, wedge, img.z, img.w, opt);
    const MonomialModel m = MonomialModel::of(f, c);
    const Complex lp1 = std::log(z) + t0.s1;
    const Complex lp2 = std::log(w) + t0.s2;
    const Complex lhs1 = std::log(img.z) + t1.s1;
    const Complex lhs2 = std::log(img.w) + t1.s2;
    const Complex rhs1 = std::log(m.a) + scale(m.delta, lp1);
    const Complex rhs2 = std::log(m.b) + scale(m.gamma, lp1) + scale(m.d, lp2);
    e.conj_residual = std::max(rel_dev(reduce_arg(lhs1 - rhs1)), rel_dev(reduce_arg(lhs2 - rhs2)));
    return e;
}

}  // namespace skewdyn
