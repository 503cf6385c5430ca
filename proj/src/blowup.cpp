#include "skewdyn/blowup.hpp"

#include <climits>
#include <stdexcept>
#include <string>

namespace skewdyn {

namespace {

void set_flags(BlowupResult& r) {
    int min_i = INT_MAX;
    bool sa = true;
    for (const auto& [e, b] : r.q_tilde.terms()) {
        min_i = std::min(min_i, e.first);
        if (e.first == 0 && e.second <= 1) sa = false;
    }
    r.superattracting_at_origin = sa;
    r.degenerates_axis = min_i > 0;
}

}  // namespace

BlowupResult blowup_pi1(const SkewProduct& f, int l) {
    if (l < 1) throw std::invalid_argument("blowup_pi1: l must be a positive integer");
    const auto c = classify(f);
    const int delta = f.delta();
    const Complex a_l = ipow(f.a(), l);
    BlowupResult r;
    std::map<Exponent, Complex> q;
    for (const auto& [e, b] : f.q().terms()) {
        const int it = e.first + l * e.second - l * delta;
        if (it < 0) {
            throw std::domain_error("blowup_pi1: not holomorphic for l = " + std::to_string(l) + " (term z^" +
                                    std::to_string(e.first) + " w^" + std::to_string(e.second) + ")");
        }
        r.exponent_map[e] = {it, e.second};
        q[{it, e.second}] += b / a_l;
    }
    r.q_tilde = BiPoly(q);
    r.gamma_tilde = Rational(c.gamma + l * c.d - l * delta);
    r.d_tilde = Rational(c.d);
    r.approximate = !f.p_is_monomial();
    set_flags(r);
    if (r.superattracting_at_origin) r.transformed.emplace(f.p(), r.q_tilde);
    return r;
}

BlowupResult blowup_pi2(const SkewProduct& f1, int l_inv) {
    if (l_inv < 1) throw std::invalid_argument("blowup_pi2: l_inv must be a positive integer");
    const auto c = classify(f1);
    const int delta = f1.delta();
    if (c.vertex != 1) throw std::domain_error("blowup_pi2: the dominant term must be the first vertex");
    const int d_tilde = l_inv * c.gamma + c.d;
    if (!(c.d <= d_tilde && d_tilde <= delta)) {
        throw std::domain_error("blowup_pi2: shape violation, need d <= d~ = " + std::to_string(d_tilde) +
                                " <= delta");
    }
    if (delta - l_inv * c.gamma < 0) throw std::domain_error("blowup_pi2: first component not holomorphic");
    BlowupResult r;
    std::map<Exponent, Complex> q;
    for (const auto& [e, b] : f1.q().terms()) {
        const Exponent to{e.first, l_inv * e.first + e.second};
        r.exponent_map[e] = to;
        q[to] += b;
    }
    r.q_tilde = BiPoly(q);
    r.gamma_tilde = Rational(c.gamma);
    r.d_tilde = Rational(d_tilde);
    r.first_component = std::make_pair(Rational(delta - l_inv * c.gamma), Rational(l_inv * (delta - d_tilde)));
    r.approximate = !f1.p_is_monomial();
    set_flags(r);
    return r;
}

BlowupFlags check_blowup_tables(const SkewProduct& f, const Classification& c, const Rational& l) {
    if (!(l > Rational(0))) throw std::invalid_argument("check_blowup_tables: l must be positive");
    // The minimum of i + l j over the support is attained at a vertex, and so is
    // every minimizer with the smallest j; vertices decide all three flags.
    const Rational ld = l * Rational(f.delta());
    BlowupFlags out;
    Rational lowest = Rational(c.polygon.n(1)) + l * Rational(c.polygon.m(1)) - ld;
    for (std::size_t k = 1; k <= c.polygon.s(); ++k) {
        const Rational it = Rational(c.polygon.n(k)) + l * Rational(c.polygon.m(k)) - ld;
        lowest = min(lowest, it);
    }
    out.holomorphic = lowest >= Rational(0);
    out.degenerates = lowest > Rational(0);
    out.superattracting = out.holomorphic;
    for (std::size_t k = 1; k <= c.polygon.s(); ++k) {
        const Rational it = Rational(c.polygon.n(k)) + l * Rational(c.polygon.m(k)) - ld;
        if (it == Rational(0) && c.polygon.m(k) <= 1) out.superattracting = false;
    }
    return out;
}

Complex pi1_fiber_value(const SkewProduct& f, int l, Complex z, Complex c) {
    return f.q()(z, ipow(z, l) * c) / ipow(f.p()(z), l);
}

Exponent composite_exponent(Exponent e, int l1, int l_inv, int delta) {
    // A = [[1, l1], [l_inv, 1 + l_inv l1]] with offset -l1 delta (1, l_inv).
    const int i = e.first, j = e.second;
    return {i + l1 * j - l1 * delta, l_inv * i + (1 + l_inv * l1) * j - l_inv * l1 * delta};
}

}  // namespace skewdyn
