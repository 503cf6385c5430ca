#include "skewdyn/green.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "skewdyn/logspace.hpp"
#include "weighted_orbit.hpp"

namespace skewdyn {

using detail::WeightedOrbit;
using namespace logspace;

std::string to_string(Termination t) {
    switch (t) {
        case Termination::converged: return "converged";
        case Termination::escaped_with_tail: return "escaped_with_tail";
        case Termination::budget: return "budget";
        case Termination::hit_zero: return "hit_zero";
        case Termination::hit_Ez: return "hit_Ez";
        case Termination::diverged: return "diverged";
    }
    return "?";
}

bool no_convergence_theorem(const Classification& c) {
    const std::size_t s = c.polygon.s();
    return s > 1 && Rational(c.delta) == c.polygon.T(s - 1) && c.d <= 1;
}

namespace {

constexpr double kInf = HUGE_VAL;

// Convergence bookkeeping shared by all estimators.
class Tracker {
public:
    explicit Tracker(double tol) : tol_(tol) {}

    // Returns true once two consecutive increments are below tol.
    bool push(double prev, double cur) {
        if (!std::isfinite(prev) || !std::isfinite(cur)) {
            small_ = 0;
            return false;
        }
        const double inc = cur - prev;
        last_ = std::abs(inc);
        incs_.push_back(inc);
        if (incs_.size() > 5) incs_.pop_front();
        small_ = last_ < tol_ ? small_ + 1 : 0;
        return small_ >= 2;
    }
    double last() const { return last_; }

    // Sign of a sequence whose last five increments share a sign and do not shrink.
    int divergence() const {
        if (incs_.size() < 5) return 0;
        const double s = incs_.front() > 0 ? 1.0 : -1.0;
        for (std::size_t k = 0; k < incs_.size(); ++k) {
            if (incs_[k] == 0.0 || (incs_[k] > 0) != (s > 0)) return 0;
            if (k > 0 && std::abs(incs_[k]) < std::abs(incs_[k - 1]) * (1.0 - 1e-9)) return 0;
        }
        return s > 0 ? 1 : -1;
    }

private:
    double tol_;
    double last_ = kInf;
    int small_ = 0;
    std::deque<double> incs_;
};

GreenEstimate finish_budget(double value, int n, const Tracker& tr) {
    GreenEstimate g{value, n, Termination::budget, tr.last()};
    if (int s = tr.divergence(); s != 0) {
        g.value = s > 0 ? kInf : -kInf;
        g.termination = Termination::diverged;
    }
    return g;
}

std::function<Rational(int)> constant_weight(Rational k) {
    return [k](int) { return k; };
}

// Iterates the weighted orbit until value(orbit) converges.
template <class ValueFn>
GreenEstimate run(const SkewProduct& f, const Classification& c, std::function<Rational(int)> kappa, Complex z,
                  Complex w, const GreenOptions& opt, double ez_value, ValueFn value) {
    const bool warn = no_convergence_theorem(c);
    auto done = [&](GreenEstimate g) {
        g.no_theorem = warn;
        return g;
    };
    WeightedOrbit orb(f, {c.gamma, c.d}, std::move(kappa), z, w);
    if (std::isnan(orb.log_rho().real())) {
        if (w == Complex(0.0, 0.0)) return done({-kInf, 0, Termination::hit_zero, 0.0});
        return done({ez_value, 0, Termination::hit_Ez, 0.0});
    }
    Tracker tr(opt.tol);
    double prev = value(orb);
    for (int n = 0; n < opt.n_max; ++n) {
        const auto st = orb.step();
        if (st == WeightedOrbit::Status::z_zero) return done({ez_value, orb.n(), Termination::hit_Ez, 0.0});
        if (st == WeightedOrbit::Status::w_stuck_zero) return done({-kInf, orb.n(), Termination::hit_zero, 0.0});
        const double cur = value(orb);
        if (tr.push(prev, cur)) return done({cur, orb.n(), Termination::converged, tr.last()});
        prev = cur;
    }
    return done(finish_budget(prev, orb.n(), tr));
}

double neg_pow(int base, int n) { return std::pow(static_cast<double>(base), -n); }

void require_alpha(const Classification& c, const char* who) {
    if (!c.alpha) throw std::domain_error(std::string(who) + ": alpha is undefined (delta = d, gamma > 0); use G_z_infty");
    if (c.d < 1) throw std::domain_error(std::string(who) + ": requires d >= 1");
}

}  // namespace

GreenEstimate G_p(const UniPoly& p, Complex z, const GreenOptions& opt) {
    if (p.empty()) throw std::invalid_argument("G_p: zero polynomial");
    const int delta = p.lowest_degree();
    const Complex a = p.coefficient(delta);
    std::vector<std::pair<double, Complex>> terms;
    for (const auto& [k, ak] : p.terms()) terms.emplace_back(k - delta, std::log(ak / a));
    const Complex log_a = std::log(a);

    Complex lz = log_of(z);
    if (is_zero(lz)) return {-kInf, 0, Termination::hit_zero, 0.0};
    double est = lz.real();
    Tracker tr(opt.tol);
    for (int n = 0; n < opt.n_max; ++n) {
        Accumulator eta;
        for (const auto& [shift, lr] : terms) eta.add(lr + scale(shift, lz));
        const Complex le = eta.result();
        if (is_zero(le)) return {-kInf, n + 1, Termination::hit_zero, 0.0};
        lz = reduce_arg(log_a + scale(delta, lz) + le);
        const double next = est + neg_pow(delta, n + 1) * (log_a.real() + le.real());
        if (tr.push(est, next)) return {next, n + 1, Termination::converged, tr.last()};
        est = next;
    }
    return finish_budget(est, opt.n_max, tr);
}

GreenEstimate G_z_alpha(const SkewProduct& f, const Classification& c, Complex z, Complex w,
                        const GreenOptions& opt) {
    require_alpha(c, "G_z_alpha");
    const int d = c.d;
    const double ez = c.alpha->sign() < 0 ? -kInf : kInf;
    return run(f, c, constant_weight(*c.alpha), z, w, opt, ez,
               [d](const WeightedOrbit& o) { return neg_pow(d, o.n()) * o.log_rho().real(); });
}

GreenEstimate G_z_infty(const SkewProduct& f, const Classification& c, Complex z, Complex w,
                        const GreenOptions& opt) {
    if (c.delta != c.d) throw std::domain_error("G_z_infty: requires delta = d");
    if (c.d < 1) throw std::domain_error("G_z_infty: requires d >= 1");
    const int d = c.d;
    const int gamma = c.gamma;
    return run(f, c, [gamma, d](int n) { return Rational(static_cast<std::int64_t>(gamma) * n, d); }, z, w, opt, kInf,
               [d](const WeightedOrbit& o) { return neg_pow(d, o.n()) * o.log_rho().real(); });
}

GreenEstimate G_z_alpha_plus(const SkewProduct& f, const Classification& c, Complex z, Complex w,
                             const GreenOptions& opt) {
    require_alpha(c, "G_z_alpha_plus");
    const int d = c.d;
    const bool warn = no_convergence_theorem(c);
    const double log_escape = std::log(opt.escape_radius);
    auto value = [d](const WeightedOrbit& o) { return neg_pow(d, o.n()) * std::max(o.log_rho().real(), 0.0); };

    WeightedOrbit orb(f, {c.gamma, c.d}, constant_weight(*c.alpha), z, w);
    GreenEstimate g;
    g.no_theorem = warn;
    if (std::isnan(orb.log_rho().real())) {
        g.value = (w == Complex(0.0, 0.0) || c.alpha->sign() < 0) ? 0.0 : kInf;
        g.termination = Termination::hit_Ez;
        return g;
    }
    for (;;) {
        const double lr = orb.log_rho().real();
        if (lr > log_escape) {
            g.value = value(orb);
            g.n_used = orb.n();
            g.termination = Termination::escaped_with_tail;
            const Complex tail = std::log(f.q().coefficient(c.gamma, c.d)) - c.alpha_real() * std::log(f.a());
            g.residual = neg_pow(d, orb.n() + 1) * std::abs(tail.real());
            if (orb.step() == WeightedOrbit::Status::ok) g.residual = std::abs(value(orb) - g.value);
            return g;
        }
        if (orb.n() >= opt.n_max) break;
        const auto st = orb.step();
        if (st == WeightedOrbit::Status::z_zero) {
            g.value = c.alpha->sign() < 0 ? 0.0 : kInf;
            g.n_used = orb.n();
            g.termination = Termination::hit_Ez;
            return g;
        }
        if (st == WeightedOrbit::Status::w_stuck_zero) {
            g.value = 0.0;
            g.n_used = orb.n();
            g.termination = Termination::hit_zero;
            return g;
        }
    }
    g.value = value(orb);
    g.n_used = orb.n();
    g.residual = g.value;
    g.termination = g.value <= opt.tol ? Termination::converged : Termination::budget;
    return g;
}

GreenEstimate G_z(const SkewProduct& f, const Classification& c, Complex z, Complex w, const GreenOptions& opt) {
    const int lambda = c.lambda;
    return run(f, c, constant_weight(Rational(0)), z, w, opt, -kInf,
               [lambda](const WeightedOrbit& o) { return neg_pow(lambda, o.n()) * o.log_rho().real(); });
}

namespace {

// The max of two convergent sequences converges to the max of the limits, so
// the z-part and the w-part are estimated separately. The z-part is
// lambda^-n delta^n G_p: G_p itself when delta = lambda and 0 otherwise.
GreenEstimate max_with_z_part(const SkewProduct& f, const Classification& c, Complex z, double weight,
                              GreenEstimate w_part, const GreenOptions& opt) {
    GreenEstimate gp = G_p(f.p(), z, opt);
    double zl = gp.value;
    if (c.delta < c.lambda && std::isfinite(zl)) zl = 0.0;
    double z_part = 0.0;
    if (weight != 0.0) z_part = weight * zl;
    GreenEstimate out = w_part;
    if (z_part > w_part.value || std::isnan(w_part.value)) {
        out.value = z_part;
        out.termination = gp.termination == Termination::hit_zero ? Termination::hit_zero : gp.termination;
        out.residual = std::abs(weight) * gp.residual;
    }
    out.n_used = std::max(w_part.n_used, gp.n_used);
    return out;
}

}  // namespace

GreenEstimate G_f(const SkewProduct& f, const Classification& c, Complex z, Complex w, const GreenOptions& opt) {
    return max_with_z_part(f, c, z, 1.0, G_z(f, c, z, w, opt), opt);
}

GreenEstimate G_f_alpha(const SkewProduct& f, const Classification& c, Complex z, Complex w,
                        const GreenOptions& opt) {
    if (!c.alpha) throw std::domain_error("G_f_alpha: alpha is undefined (delta = d, gamma > 0)");
    return max_with_z_part(f, c, z, c.alpha_real(), G_z(f, c, z, w, opt), opt);
}

FunctionalResidual functional_residual(const SkewProduct& f, const Classification& c, FunctionalKind kind, Complex z,
                                       Complex w, const GreenOptions& opt) {
    const Point2 img = eval_skew(f, z, w);
    FunctionalResidual r;
    if (!img.finite()) return r;
    GreenEstimate g0, g1;
    double extra = 0.0;
    switch (kind) {
        case FunctionalKind::alpha:
            g0 = G_z_alpha(f, c, z, w, opt);
            g1 = G_z_alpha(f, c, img.z, img.w, opt);
            break;
        case FunctionalKind::alpha_plus:
            g0 = G_z_alpha_plus(f, c, z, w, opt);
            g1 = G_z_alpha_plus(f, c, img.z, img.w, opt);
            break;
        case FunctionalKind::infty: {
            g0 = G_z_infty(f, c, z, w, opt);
            g1 = G_z_infty(f, c, img.z, img.w, opt);
            const GreenEstimate gp = G_p(f.p(), z, opt);
            if (!std::isfinite(gp.value)) return r;
            extra = c.gamma * gp.value;
            break;
        }
    }
    if (!std::isfinite(g0.value) || !std::isfinite(g1.value)) return r;
    r.value = std::abs(g1.value - (c.d * g0.value + extra));
    r.defined = true;
    return r;
}

SubmeanResult submean_check(const std::function<double(Complex)>& sampler, Complex center, double radius,
                            int m_points) {
    if (m_points < 1 || !(radius > 0.0)) throw std::invalid_argument("submean_check: need m_points >= 1, radius > 0");
    SubmeanResult r;
    r.center_value = sampler(center);
    if (!std::isfinite(r.center_value)) return r;
    double sum = 0.0;
    for (int k = 0; k < m_points; ++k) {
        const double t = kTwoPi * k / m_points;
        const double v = sampler(center + std::polar(radius, t));
        if (!std::isfinite(v)) return r;
        sum += v;
    }
    r.circle_average = sum / m_points;
    r.deficit = r.center_value - r.circle_average;
    r.conclusive = true;
    return r;
}

namespace {

std::vector<Complex> fiber_orbit(const SkewProduct& f, Complex z, int n) {
    std::vector<Complex> zs{z};
    for (int k = 1; k < n; ++k) zs.push_back(f.p()(zs.back()));
    return zs;
}

// Roots of sum_j c[j] w^j - target.
std::vector<Complex> solve_fiber(std::vector<Complex> c, Complex target, int step) {
    c[0] -= target;
    int deg = static_cast<int>(c.size()) - 1;
    while (deg > 0 && c[static_cast<std::size_t>(deg)] == Complex(0.0, 0.0)) --deg;
    if (deg == 0) {
        throw std::runtime_error("fiber_zero_preimages: fiber map degenerates to a constant at step " +
                                 std::to_string(step));
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    for (int r = 1; r < deg; ++r) companion(r, r - 1) = 1.0;
    for (int r = 0; r < deg; ++r) companion(r, deg - 1) = -c[static_cast<std::size_t>(r)] / c[static_cast<std::size_t>(deg)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<Complex> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + deg);
    for (auto& x : roots) {  // Newton polish on the fiber polynomial
        for (int it = 0; it < 4; ++it) {
            Complex v(0.0, 0.0), dv(0.0, 0.0);
            for (int j = deg; j >= 0; --j) {
                dv = dv * x + v;
                v = v * x + c[static_cast<std::size_t>(j)];
            }
            if (dv == Complex(0.0, 0.0)) break;
            const Complex nx = x - v / dv;
            if (!std::isfinite(nx.real()) || !std::isfinite(nx.imag())) break;
            x = nx;
        }
    }
    return roots;
}

void merge_close(std::vector<Complex>& roots) {
    std::vector<Complex> out;
    for (const auto& r : roots) {
        bool dup = false;
        for (const auto& o : out) {
            if (std::abs(r - o) <= 1e-7 * std::max(1.0, std::abs(o))) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(r);
    }
    roots.swap(out);
}

}  // namespace

Complex fiber_composite(const SkewProduct& f, Complex z, int n, Complex w) {
    for (int k = 0; k < n; ++k) {
        w = f.q()(z, w);
        z = f.p()(z);
    }
    return w;
}

std::vector<Complex> fiber_zero_preimages(const SkewProduct& f, Complex z, int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("fiber_zero_preimages: n must be in 1..6");
    const auto zs = fiber_orbit(f, z, n);
    std::vector<Complex> targets{Complex(0.0, 0.0)};
    for (int k = n - 1; k >= 0; --k) {
        const auto coeffs = f.q().fiber_coefficients(zs[static_cast<std::size_t>(k)]);
        std::vector<Complex> next;
        for (const auto& t : targets) {
            auto r = solve_fiber(coeffs, t, k);
            next.insert(next.end(), r.begin(), r.end());
        }
        merge_close(next);
        targets.swap(next);
    }
    for (const auto& r : targets) {
        const double res = std::abs(fiber_composite(f, z, n, r));
        if (!(res < 1e-8)) {
            throw std::runtime_error("fiber_zero_preimages: root residual " + std::to_string(res) + " exceeds 1e-8");
        }
    }
    return targets;
}

}  // namespace skewdyn
