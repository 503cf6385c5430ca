#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "skewdyn/rational.hpp"

namespace skewdyn {

using Complex = std::complex<double>;

// Integer power by repeated squaring; k >= 0.
Complex ipow(Complex x, int k);

struct Point2 {
    Complex z;
    Complex w;
    bool finite() const;
};

using Exponent = std::pair<int, int>;  // (i, j) for z^i w^j

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::map<int, Complex> terms);

    const std::map<int, Complex>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int lowest_degree() const;
    int degree() const;
    Complex coefficient(int k) const;
    Complex operator()(Complex z) const;

private:
    std::map<int, Complex> terms_;
};

class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::map<Exponent, Complex> terms);

    const std::map<Exponent, Complex>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::vector<Exponent> support() const;
    Complex coefficient(int i, int j) const;
    int degree_w() const;
    Complex operator()(Complex z, Complex w) const;
    // c_j(z) = sum_i b_ij z^i for j = 0..degree_w, so q(z, w) = sum_j c_j(z) w^j.
    std::vector<Complex> fiber_coefficients(Complex z) const;

private:
    std::map<Exponent, Complex> terms_;
    std::map<int, UniPoly> columns_;  // j -> c_j
};

// f(z, w) = (p(z), q(z, w)) with p = a z^delta + ..., delta >= 2, and every
// support pair (i, j) of q satisfying i + j >= 2 or (i, j) = (1, 0).
class SkewProduct {
public:
    SkewProduct(UniPoly p, BiPoly q);

    const UniPoly& p() const { return p_; }
    const BiPoly& q() const { return q_; }
    int delta() const { return delta_; }
    Complex a() const { return p_.coefficient(delta_); }
    bool p_is_monomial() const { return p_.terms().size() == 1; }

private:
    UniPoly p_;
    BiPoly q_;
    int delta_ = 0;
};

Point2 eval_skew(const SkewProduct& f, Complex z, Complex w);

struct OrbitPoint {
    Complex z;
    Complex w;
    int n = 0;
    bool escaped = false;
    double log_guard = 0.0;  // largest log max(|z_k|, |w_k|) seen for k <= n
};

// Orbit (z0, w0), f(z0, w0), ... up to n_max steps. Stops after the first point
// whose max-norm exceeds escape_radius or is not finite; that point is kept
// and flagged escaped.
std::vector<OrbitPoint> iterate(const SkewProduct& f, Complex z0, Complex w0, int n_max,
                                double escape_radius = 1e12);

struct RationalPoint {
    Rational x;
    Rational y;
    friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

RationalPoint as_rational_geometry(Exponent e);

}  // namespace skewdyn
