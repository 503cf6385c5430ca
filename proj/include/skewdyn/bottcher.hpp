#pragma once

#include <vector>

#include "skewdyn/algebra.hpp"
#include "skewdyn/newton.hpp"
#include "skewdyn/regions.hpp"

namespace skewdyn {

// f0(z, w) = (a z^delta, b z^gamma w^d)
struct MonomialModel {
    int delta = 2;
    int gamma = 0;
    int d = 1;
    Complex a{1.0, 0.0};
    Complex b{1.0, 0.0};

    static MonomialModel of(const SkewProduct& f, const Classification& c);
};

// Logarithms of a point; zero coordinates are not representable.
struct LogPoint {
    Complex lz;
    Complex lw;
};

// n single-step inverses of f0 starting from (log Z, log W). At level k the
// root closest in argument to refs[k] is taken when refs has that level
// (refs[0] is the deepest level, i.e. the original point), else the principal root.
LogPoint monomial_inverse_log(const MonomialModel& m, int n, LogPoint target, const std::vector<LogPoint>& refs = {});
Point2 monomial_inverse(const MonomialModel& m, int n, Complex Z, Complex W, const std::vector<Point2>& refs = {});

struct BottcherOptions {
    int n_max = 64;
    double tol = 1e-16;  // on the size of the telescoping increments
};

struct BottcherEstimate {
    Complex phi1;
    Complex phi2;
    Complex log_factor1;  // phi1 = z exp(log_factor1)
    Complex log_factor2;  // phi2 = w exp(log_factor2)
    int n_used = 0;
    double conj_residual = 0.0;  // relative max-norm of phi o f - f0 o phi
    double id_deviation = 0.0;   // max |exp(log_factor) - 1|
    bool no_theorem = false;
};

// phi = lim f0^-n o f^n on the wedge, summed as a telescoping product of
// single-step corrections log(1 + eta) and log(1 + zeta). Throws when the
// orbit leaves `wedge` (naming the step) or d = 0.
BottcherEstimate bottcher(const SkewProduct& f, const Classification& c, const WedgeSpec& wedge, Complex z, Complex w,
                          const BottcherOptions& opt = {});

}  // namespace skewdyn
