#include "weighted_orbit.hpp"

#include <stdexcept>

namespace skewdyn::detail {

using namespace logspace;

WeightedOrbit::WeightedOrbit(const SkewProduct& f, Exponent dominant, std::function<Rational(int)> kappa,
                             Complex z, Complex w)
    : delta_(f.delta()), gamma_(dominant.first), d_(dominant.second), kappa_(std::move(kappa)) {
    const Complex a = f.a();
    const Complex b = f.q().coefficient(gamma_, d_);
    if (b == Complex(0.0, 0.0)) throw std::invalid_argument("weighted orbit: dominant exponent not in the support");
    log_a_ = std::log(a);
    log_b_ = std::log(b);
    for (const auto& [k, ak] : f.p().terms()) p_terms_.push_back({double(k - delta_), std::log(ak / a)});
    for (const auto& [e, bij] : f.q().terms()) q_terms_.push_back({e.first, e.second, std::log(bij), std::log(bij / b)});
    lz_ = log_of(z);
    lr_ = log_of(w) - scale(kappa_(0).to_double(), lz_);
    if (is_zero(lz_) && kappa_(0) != Rational(0)) lr_ = {NAN, NAN};
}

Complex WeightedOrbit::log_w() const { return scale(kappa_(n_).to_double(), lz_) + lr_; }

Complex WeightedOrbit::log_q_direct(Complex lz, Complex lw) const {
    Accumulator acc;
    for (const auto& t : q_terms_) acc.add(t.log_coef + scale(t.i, lz) + scale(t.j, lw));
    return acc.result();
}

WeightedOrbit::Status WeightedOrbit::step() {
    const Rational k0 = kappa_(n_);
    const Rational k1 = kappa_(n_ + 1);
    if (is_zero(lz_) && (k0 != Rational(0) || k1 != Rational(0))) return Status::z_zero;

    Accumulator eta;
    for (const auto& t : p_terms_) eta.add(t.log_ratio + scale(t.shift, lz_));
    const Complex le = eta.result();
    const Complex lz_next = log_a_ + scale(delta_, lz_) + le;
    if (is_zero(lz_next) && k1 != Rational(0)) return Status::z_zero;

    Complex lr_next;
    last_eta_ = le;
    last_factored_ = false;
    last_zeta_ = {NAN, NAN};
    if (!is_zero(lr_)) {
        Accumulator zeta;
        for (const auto& t : q_terms_) {
            const double zc = (Rational(t.i - gamma_) + Rational(t.j - d_) * k0).to_double();
            zeta.add(t.log_ratio + scale(zc, lz_) + scale(t.j - d_, lr_));
        }
        const Complex lzeta = zeta.result();
        const double drift = (Rational(gamma_) + Rational(d_) * k0 - Rational(delta_) * k1).to_double();
        lr_next = scale(d_, lr_) + log_b_ - scale(k1.to_double(), log_a_ + le) + lzeta + scale(drift, lz_);
        if (std::isfinite(lr_next.real()) || is_zero(lzeta)) {
            last_factored_ = true;
            last_zeta_ = lzeta;
        }
    }
    if (!last_factored_) {
        // w = 0, or the factorization is singular (z = 0): evaluate q directly.
        const Complex lw = scale(k0.to_double(), lz_) + lr_;
        const Complex lw_next = log_q_direct(lz_, lw);
        if (is_zero(lw) && is_zero(lw_next)) return Status::w_stuck_zero;
        lr_next = lw_next - scale(k1.to_double(), lz_next);
    }

    // Keep arg z in (-pi, pi]; w = z^kappa rho fixes the matching shift of arg rho.
    Complex lz_red = lz_next;
    if (!is_zero(lz_next)) {
        const double turns = std::round(lz_next.imag() / kTwoPi);
        lz_red = {lz_next.real(), lz_next.imag() - turns * kTwoPi};
        if (!is_zero(lr_next) && turns != 0.0) {
            lr_next += Complex(0.0, std::remainder(k1.to_double() * turns, 1.0) * kTwoPi);
        }
    }
    lz_ = lz_red;
    lr_ = is_zero(lr_next) ? lr_next : reduce_arg(lr_next);
    ++n_;
    return Status::ok;
}

}  // namespace skewdyn::detail
