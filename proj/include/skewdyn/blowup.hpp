#pragma once

#include <map>
#include <optional>
#include <utility>

#include "skewdyn/algebra.hpp"
#include "skewdyn/newton.hpp"
#include "skewdyn/rational.hpp"

namespace skewdyn {

struct BlowupResult {
    // pi1: the conjugated map (p, q~) in coordinates (z, c). Empty for pi2, whose
    // first component is a monomial times a unit rather than a polynomial in t.
    std::optional<SkewProduct> transformed;
    BiPoly q_tilde;
    std::map<Exponent, Exponent> exponent_map;
    Rational gamma_tilde;  // pi1: gamma + l d - l delta
    Rational d_tilde;      // pi2: l_inv gamma + d; pi1: d
    // pi2 only: exponents (of t, of w) of the leading monomial of the first component.
    std::optional<std::pair<Rational, Rational>> first_component;
    bool superattracting_at_origin = false;  // origin fixed with nilpotent derivative
    bool degenerates_axis = false;           // the new vertical axis is collapsed to a point
    bool approximate = false;                // p was replaced by its lowest term
};

// pi1(z, c) = (z, z^l c): q~(z, c) = q(z, z^l c) / (a z^delta)^l. Throws
// std::domain_error when some transformed exponent is negative.
BlowupResult blowup_pi1(const SkewProduct& f, int l);

// pi2(t, w) = (t w^l_inv, w) applied to a map whose dominant term is its first
// vertex; q~(t, w) = q(t w^l_inv, w). Throws std::domain_error when d <= d~ <= delta fails.
BlowupResult blowup_pi2(const SkewProduct& f1, int l_inv);

struct BlowupFlags {
    bool holomorphic = false;
    bool superattracting = false;
    bool degenerates = false;
};

// The pi1 flags predicted from the Newton polygon vertices alone; accepts rational l.
BlowupFlags check_blowup_tables(const SkewProduct& f, const Classification& c, const Rational& l);

// q(z, z^l c) / p(z)^l evaluated directly; agrees with q~ when p is a monomial.
Complex pi1_fiber_value(const SkewProduct& f, int l, Complex z, Complex c);

// pi2 o pi1 exponent map written as a single affine map of (i, j).
Exponent composite_exponent(Exponent e, int l1, int l_inv, int delta);

}  // namespace skewdyn
