#include "skewdyn/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace skewdyn {

Complex ipow(Complex x, int k) {
    if (k < 0) throw std::invalid_argument("ipow: negative exponent");
    Complex result(1.0, 0.0);
    while (k > 0) {
        if (k & 1) result *= x;
        x *= x;
        k >>= 1;
    }
    return result;
}

bool Point2::finite() const {
    return std::isfinite(z.real()) && std::isfinite(z.imag()) && std::isfinite(w.real()) &&
           std::isfinite(w.imag());
}

UniPoly::UniPoly(std::map<int, Complex> terms) {
    for (const auto& [k, c] : terms) {
        if (k < 0) throw std::invalid_argument("UniPoly: negative degree");
        if (c != Complex(0.0, 0.0)) terms_.emplace(k, c);
    }
}

int UniPoly::lowest_degree() const {
    if (terms_.empty()) throw std::logic_error("UniPoly: zero polynomial has no lowest degree");
    return terms_.begin()->first;
}

int UniPoly::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

Complex UniPoly::coefficient(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

Complex UniPoly::operator()(Complex z) const {
    // Sparse Horner from the top degree down.
    Complex acc(0.0, 0.0);
    int prev = -1;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (prev >= 0) acc *= ipow(z, prev - it->first);
        acc += it->second;
        prev = it->first;
    }
    if (prev > 0) acc *= ipow(z, prev);
    return acc;
}

BiPoly::BiPoly(std::map<Exponent, Complex> terms) {
    std::map<int, std::map<int, Complex>> cols;
    for (const auto& [e, c] : terms) {
        if (e.first < 0 || e.second < 0) throw std::invalid_argument("BiPoly: negative exponent");
        if (c == Complex(0.0, 0.0)) continue;
        terms_.emplace(e, c);
        cols[e.second][e.first] = c;
    }
    for (auto& [j, col] : cols) columns_.emplace(j, UniPoly(std::move(col)));
}

std::vector<Exponent> BiPoly::support() const {
    std::vector<Exponent> out;
    out.reserve(terms_.size());
    for (const auto& kv : terms_) out.push_back(kv.first);
    return out;
}

Complex BiPoly::coefficient(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

int BiPoly::degree_w() const { return columns_.empty() ? 0 : columns_.rbegin()->first; }

Complex BiPoly::operator()(Complex z, Complex w) const {
    Complex acc(0.0, 0.0);
    int prev = -1;
    for (auto it = columns_.rbegin(); it != columns_.rend(); ++it) {
        if (prev >= 0) acc *= ipow(w, prev - it->first);
        acc += it->second(z);
        prev = it->first;
    }
    if (prev > 0) acc *= ipow(w, prev);
    return acc;
}

std::vector<Complex> BiPoly::fiber_coefficients(Complex z) const {
    std::vector<Complex> c(static_cast<std::size_t>(degree_w()) + 1, Complex(0.0, 0.0));
    for (const auto& [j, col] : columns_) c[static_cast<std::size_t>(j)] = col(z);
    return c;
}

SkewProduct::SkewProduct(UniPoly p, BiPoly q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_.empty()) throw std::invalid_argument("skew product: p is identically zero");
    delta_ = p_.lowest_degree();
    if (delta_ < 2) {
        throw std::invalid_argument("skew product: p must vanish to order >= 2 at 0 (got order " +
                                    std::to_string(delta_) + ")");
    }
    for (const auto& [e, c] : q_.terms()) {
        const auto [i, j] = e;
        if (!(i + j >= 2 || (i == 1 && j == 0))) {
            throw std::invalid_argument("skew product: term z^" + std::to_string(i) + " w^" + std::to_string(j) +
                                        " breaks the nilpotent form at the origin");
        }
    }
}

Point2 eval_skew(const SkewProduct& f, Complex z, Complex w) { return {f.p()(z), f.q()(z, w)}; }

std::vector<OrbitPoint> iterate(const SkewProduct& f, Complex z0, Complex w0, int n_max, double escape_radius) {
    if (n_max < 0) throw std::invalid_argument("iterate: n_max < 0");
    if (!(escape_radius > 0.0)) throw std::invalid_argument("iterate: escape radius must be positive");

    std::vector<OrbitPoint> orbit;
    orbit.reserve(static_cast<std::size_t>(n_max) + 1);
    double guard = -HUGE_VAL;
    auto push = [&](Complex z, Complex w, int n) {
        double m = std::max(std::abs(z), std::abs(w));
        guard = std::max(guard, std::log(m));
        bool bad = !Point2{z, w}.finite() || m > escape_radius;
        orbit.push_back({z, w, n, bad, guard});
        return bad;
    };
    if (push(z0, w0, 0)) return orbit;
    Complex z = z0, w = w0;
    for (int n = 1; n <= n_max; ++n) {
        Point2 next = eval_skew(f, z, w);
        z = next.z;
        w = next.w;
        if (push(z, w, n)) break;
    }
    return orbit;
}

RationalPoint as_rational_geometry(Exponent e) { return {Rational(e.first), Rational(e.second)}; }

}  // namespace skewdyn
