#pragma once

#include <functional>
#include <vector>

#include "skewdyn/algebra.hpp"
#include "skewdyn/logspace.hpp"
#include "skewdyn/rational.hpp"

namespace skewdyn::detail {

// Orbit of f in coordinates (log z, log rho) with w = z^kappa(n) * rho, where
// kappa is a rational weight that may depend on the step. Each step factors
// q through its dominant monomial b z^gamma w^d, so
//   log rho' = d log rho + log b - kappa' (log a + log(1+eta)) + log(1+zeta)
//              + (gamma + d kappa - delta kappa') log z
// and the bracketed coefficient vanishes for the weights used by the
// weighted Green functions.
class WeightedOrbit {
public:
    enum class Status { ok, z_zero, w_stuck_zero };

    WeightedOrbit(const SkewProduct& f, Exponent dominant, std::function<Rational(int)> kappa, Complex z,
                  Complex w);

    Status step();

    int n() const { return n_; }
    Complex log_z() const { return lz_; }
    Complex log_rho() const { return lr_; }
    Complex log_w() const;
    // Principal logs of 1 + eta(z_{n-1}) and 1 + zeta(z_{n-1}, w_{n-1}) from the
    // last step; zeta is NaN when that step bypassed the factorization.
    Complex last_log_eta() const { return last_eta_; }
    Complex last_log_zeta() const { return last_zeta_; }
    bool last_step_factored() const { return last_factored_; }
    Rational kappa(int k) const { return kappa_(k); }

private:
    struct PTerm {
        double shift;
        Complex log_ratio;
    };
    struct QTerm {
        int i, j;
        Complex log_coef;   // log b_ij
        Complex log_ratio;  // log(b_ij / b)
    };

    Complex log_q_direct(Complex lz, Complex lw) const;

    int delta_;
    int gamma_;
    int d_;
    Complex log_a_;
    Complex log_b_;
    std::vector<PTerm> p_terms_;
    std::vector<QTerm> q_terms_;
    std::function<Rational(int)> kappa_;

    int n_ = 0;
    Complex lz_;
    Complex lr_;
    Complex last_eta_{0.0, 0.0};
    Complex last_zeta_{0.0, 0.0};
    bool last_factored_ = true;
};

}  // namespace skewdyn::detail
