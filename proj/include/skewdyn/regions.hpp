#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skewdyn/algebra.hpp"
#include "skewdyn/green.hpp"
#include "skewdyn/newton.hpp"
#include "skewdyn/rational.hpp"

namespace skewdyn {

enum class WedgeFamily { U_l, U_r1r2_l, U_l_plus, U_l1l2, V_l, S_out, S_in };
std::string to_string(WedgeFamily f);
WedgeFamily parse_wedge_family(const std::string& name);

// Region families in (z, w) space:
//   U_l, U_l_plus  |z| < r,  |w| < r |z|^l
//   U_r1r2_l       |z| < r,  |w| < r2 |z|^l
//   U_l1l2         |z|^(l+l_second) < r^l_second |w|,  |w| < r |z|^l
//   V_l            0 < |z| < r,  r |z|^l <= |w| < r3
//   S_out          |z|^l < r^l |w|,  |w| = r
//   S_in           |z|^l = r^l |w|,  |w| < r
// The two surfaces test their equality within a relative band.
struct WedgeSpec {
    WedgeFamily family = WedgeFamily::U_l;
    Rational l;
    Rational l_second;
    double r = 0.1;
    double r2 = 0.1;
    double r3 = 1.0;
    double band = 1e-6;

    void validate() const;  // throws std::invalid_argument
    std::string str() const;
};

bool contains(const WedgeSpec& spec, Complex z, Complex w);
// Same test on log|z|, log|w| (-inf for zero coordinates).
bool contains_log(const WedgeSpec& spec, double log_z, double log_w);

// The wedge on which the dominant term of c controls q: a bidisk in Case 1,
// U^{l1} in Case 2, U^{0,l2} in Case 3 and U^{l1,l2} in Case 4.
WedgeSpec dominant_wedge(const Classification& c, double r);

// Deterministic point of the region for (seed, index); every returned point
// satisfies contains().
Point2 sample_point(const WedgeSpec& spec, std::uint64_t seed, std::uint64_t index);

struct InvarianceWitness {
    std::uint64_t index = 0;
    Point2 point;
    Point2 image;
};

struct InvarianceReport {
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
    std::vector<InvarianceWitness> witnesses;  // first few violations, by index
    bool passed() const { return violations == 0; }
};

// Maps sample_point(spec, seed, i) for i in [first, first + count) once and
// records every image outside the region.
InvarianceReport verify_invariance(const SkewProduct& f, const WedgeSpec& spec, std::uint64_t first,
                                   std::uint64_t count, std::uint64_t seed, std::size_t max_witnesses = 8);
InvarianceReport verify_invariance(const SkewProduct& f, const WedgeSpec& spec, std::uint64_t samples,
                                   std::uint64_t seed);

enum class BasinKind { in_A0_and_Afl, in_A0_not_yet_Afl, escapes_or_outside, on_Ez, near_Edeg };
std::string to_string(BasinKind k);

struct BasinLabel {
    BasinKind label = BasinKind::in_A0_not_yet_Afl;
    std::optional<int> entry_step;
    bool undecided = false;    // budget ran out before a decision
    bool a0_detected = false;  // decaying orbit seen near the origin
};

struct ClassifyOptions {
    double work_radius = 1e12;  // orbits beyond this max-norm count as escaping
    double deg_epsilon = 1e-9;  // fiber degeneracy threshold on |c_j(z)|, j >= 1
    int decay_steps = 5;
};

BasinLabel classify_point(const SkewProduct& f, const Classification& c, const WedgeSpec& spec, Complex z, Complex w, int budget,
                          const ClassifyOptions& opt = {});

struct ProbeSample {
    Point2 point;
    BasinLabel label;
    GreenEstimate green;  // G_z^alpha at the point
};

struct ProbeOptions {
    int budget = 200;
    double t_min = 1e-6;
    double t_max = 1e6;
    int scan_points = 241;
    int bisection_steps = 80;
    ClassifyOptions classify{HUGE_VAL};  // no escape cut-off: the orbit is tracked in log space
    GreenOptions green;
};

// Walks w = t * direction in the fiber over z0, brackets the first change of
// "orbit enters the wedge", bisects it, and returns `steps` samples approaching
// the boundary from inside followed by the bisection midpoint. Throws when
// the p-orbit of z0 does not decay or no bracket is found.
std::vector<ProbeSample> boundary_probe(const SkewProduct& f, const Classification& c, const WedgeSpec& spec,
                                        Complex z0, Complex direction, int steps, const ProbeOptions& opt = {});

}  // namespace skewdyn
