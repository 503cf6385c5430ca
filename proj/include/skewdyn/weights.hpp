#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewdyn/algebra.hpp"
#include "skewdyn/newton.hpp"
#include "skewdyn/rational.hpp"

namespace skewdyn {

struct WeightInterval {
    Rational lo;
    std::optional<Rational> hi;  // empty means +infinity
    bool lo_open = false;
    bool hi_open = false;

    bool empty() const;
    bool contains(const Rational& l) const;
    // Float membership with a 1e-12 guard band; *approximate is set when the
    // answer falls inside the band.
    bool contains(double l, bool* approximate = nullptr) const;
    std::string str() const;
};

// Pairs (l_(1), l_(1) + l_(2)).
struct WeightRectangle {
    WeightInterval i1;
    WeightInterval sums;
    Rational alpha;
    Rational l1;
    Rational l1_plus_l2;
    std::optional<std::pair<Rational, Rational>> excluded_corner;

    // [alpha - l_(1), l1 + l2 - l_(1)] intersected with the positive reals.
    WeightInterval i2_of(const Rational& l_first) const;
    bool contains(const Rational& l_first, const Rational& l_second) const;
    std::string str() const;
};

WeightInterval interval_case2(const Classification& c);
WeightInterval interval_case3(const Classification& c);
WeightRectangle rectangle_case4(const Classification& c);

struct DValue {
    Rational l;
    Rational d_min;                   // min over the support of i/l + j
    Exponent attaining_vertex;        // attaining point with the smallest j
    std::vector<Exponent> attaining;  // every support point on the minimal line
    std::optional<Rational> d_star;   // min over the points off the minimal line
};

DValue d_value(const BiPoly& q, const Rational& l);
// min of i/l + j over the support with one exponent removed.
std::optional<Rational> d_star_excluding(const BiPoly& q, const Rational& l, Exponent excluded);

// Radius r1 such that f maps {|z| < r1, |w| < r2 |z|^l} into itself, found by
// evaluating the term-by-term bound of q / p^l and halving r1 until it holds.
double invariance_radii(const SkewProduct& f, const Classification& c, const DValue& dv, const Rational& l,
                        double r2);

}  // namespace skewdyn
