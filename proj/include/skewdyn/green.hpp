#pragma once

#include <functional>
#include <string>
#include <vector>

#include "skewdyn/algebra.hpp"
#include "skewdyn/newton.hpp"

namespace skewdyn {

enum class Termination { converged, escaped_with_tail, budget, hit_zero, hit_Ez, diverged };
std::string to_string(Termination t);

struct GreenEstimate {
    double value = 0.0;  // may be +inf or -inf
    int n_used = 0;
    Termination termination = Termination::budget;
    double residual = 0.0;
    // Set in regimes without a convergence theorem (delta = T_{s-1} with d <= 1).
    bool no_theorem = false;
};

struct GreenOptions {
    int n_max = 64;
    double tol = 1e-10;
    double escape_radius = 1e12;
};

GreenEstimate G_p(const UniPoly& p, Complex z, const GreenOptions& opt = {});

// d^-n log|w_n / z_n^alpha|
GreenEstimate G_z_alpha(const SkewProduct& f, const Classification& c, Complex z, Complex w,
                        const GreenOptions& opt = {});
// d^-n log(|w_n| / |z_n|^(gamma n / d)), delta = d only
GreenEstimate G_z_infty(const SkewProduct& f, const Classification& c, Complex z, Complex w,
                        const GreenOptions& opt = {});
// d^-n log+|w_n / z_n^alpha|
GreenEstimate G_z_alpha_plus(const SkewProduct& f, const Classification& c, Complex z, Complex w,
                             const GreenOptions& opt = {});
// lambda^-n log|w_n|
GreenEstimate G_z(const SkewProduct& f, const Classification& c, Complex z, Complex w, const GreenOptions& opt = {});
// lambda^-n log max(|z_n|, |w_n|)
GreenEstimate G_f(const SkewProduct& f, const Classification& c, Complex z, Complex w, const GreenOptions& opt = {});
// lambda^-n log max(|z_n|^alpha, |w_n|)
GreenEstimate G_f_alpha(const SkewProduct& f, const Classification& c, Complex z, Complex w,
                        const GreenOptions& opt = {});

bool no_convergence_theorem(const Classification& c);

enum class FunctionalKind { alpha, infty, alpha_plus };

struct FunctionalResidual {
    double value = 0.0;
    bool defined = false;  // false when a sentinel appeared on either side
};

// One-step residual of G o f = d G (alpha kinds) or G o f = d G + gamma G_p (infty).
FunctionalResidual functional_residual(const SkewProduct& f, const Classification& c, FunctionalKind kind, Complex z,
                                       Complex w, const GreenOptions& opt = {});

struct SubmeanResult {
    double center_value = 0.0;
    double circle_average = 0.0;
    double deficit = 0.0;  // center - average; <= 0 up to tolerance for subharmonic functions
    bool conclusive = false;
};

SubmeanResult submean_check(const std::function<double(Complex)>& sampler, Complex center, double radius,
                            int m_points);

// All roots of Q_z^n = q_{z_{n-1}} o ... o q_z, near-duplicates merged.
std::vector<Complex> fiber_zero_preimages(const SkewProduct& f, Complex z, int n);

// Q_z^n(w) evaluated by composition.
Complex fiber_composite(const SkewProduct& f, Complex z, int n, Complex w);

}  // namespace skewdyn
