#include "skewdyn/weights.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace skewdyn {

bool WeightInterval::empty() const {
    if (!hi) return false;
    if (lo < *hi) return false;
    return !(lo == *hi && !lo_open && !hi_open);
}

bool WeightInterval::contains(const Rational& l) const {
    if (lo_open ? !(l > lo) : !(l >= lo)) return false;
    if (!hi) return true;
    return hi_open ? l < *hi : l <= *hi;
}

bool WeightInterval::contains(double l, bool* approximate) const {
    constexpr double band = 1e-12;
    const double a = lo.to_double();
    bool near = std::abs(l - a) <= band;
    bool inside = lo_open ? l > a : l >= a;
    if (hi) {
        const double b = hi->to_double();
        near = near || std::abs(l - b) <= band;
        inside = inside && (hi_open ? l < b : l <= b);
    }
    if (approximate) *approximate = near;
    return inside;
}

std::string WeightInterval::str() const {
    if (empty()) return "{}";
    if (hi && lo == *hi) return "{" + lo.str() + "}";
    std::string out = lo_open ? "(" : "[";
    out += lo.str() + ", ";
    out += hi ? hi->str() + (hi_open ? ")" : "]") : std::string("inf)");
    return out;
}

WeightInterval WeightRectangle::i2_of(const Rational& l_first) const {
    WeightInterval out;
    out.lo = alpha - l_first;
    out.hi = l1_plus_l2 - l_first;
    if (out.lo <= Rational(0)) {
        out.lo = Rational(0);
        out.lo_open = true;
    }
    return out;
}

bool WeightRectangle::contains(const Rational& l_first, const Rational& l_second) const {
    if (!i1.contains(l_first) || !(l_second > Rational(0))) return false;
    const Rational sum = l_first + l_second;
    if (!sums.contains(sum)) return false;
    if (excluded_corner && excluded_corner->first == l_first && excluded_corner->second == sum) return false;
    return i2_of(l_first).contains(l_second);
}

std::string WeightRectangle::str() const {
    std::string out = i1.str() + " x " + sums.str();
    if (excluded_corner) out += " minus (" + excluded_corner->first.str() + ", " + excluded_corner->second.str() + ")";
    return out;
}

WeightInterval interval_case2(const Classification& c) {
    if (c.case_tag != CaseTag::Case2 && c.case_tag != CaseTag::Case1) {
        throw std::invalid_argument("interval_case2: classification is " + to_string(c.case_tag));
    }
    WeightInterval out;
    out.lo = c.l1;
    out.lo_open = c.case_tag == CaseTag::Case1;  // weights are positive
    if (c.delta > c.d) out.hi = *c.alpha;
    return out;
}

WeightInterval interval_case3(const Classification& c) {
    if (c.case_tag != CaseTag::Case3) {
        throw std::invalid_argument("interval_case3: classification is " + to_string(c.case_tag));
    }
    WeightInterval out;
    out.hi = *c.l2;
    if (c.gamma > 0) {
        out.lo = *c.alpha;
    } else {
        out.lo = Rational(0);
        out.lo_open = true;
    }
    return out;
}

WeightRectangle rectangle_case4(const Classification& c) {
    if (c.case_tag != CaseTag::Case4) {
        throw std::invalid_argument("rectangle_case4: classification is " + to_string(c.case_tag));
    }
    WeightRectangle r;
    r.alpha = *c.alpha;
    r.l1 = c.l1;
    r.l1_plus_l2 = c.l1 + *c.l2;
    if (r.alpha == r.l1_plus_l2) {  // delta = T_k
        r.i1 = {r.l1, r.alpha, false, true};
        r.sums = {r.alpha, r.alpha, false, false};
    } else if (r.alpha == r.l1) {  // delta = T_{k-1}
        r.i1 = {r.alpha, r.alpha, false, false};
        r.sums = {r.alpha, r.l1_plus_l2, true, false};
    } else {
        r.i1 = {r.l1, r.alpha, false, false};
        r.sums = {r.alpha, r.l1_plus_l2, false, false};
        r.excluded_corner = std::make_pair(r.alpha, r.alpha);
    }
    return r;
}

DValue d_value(const BiPoly& q, const Rational& l) {
    if (!(l > Rational(0))) throw std::invalid_argument("d_value: weight must be positive");
    if (q.empty()) throw std::invalid_argument("d_value: empty support");
    DValue dv;
    dv.l = l;
    bool first = true;
    for (const auto& e : q.support()) {
        Rational v = Rational(e.first) / l + Rational(e.second);
        if (first || v < dv.d_min) {
            dv.d_min = v;
            first = false;
        }
    }
    for (const auto& e : q.support()) {
        Rational v = Rational(e.first) / l + Rational(e.second);
        if (v == dv.d_min) {
            dv.attaining.push_back(e);
        } else if (!dv.d_star || v < *dv.d_star) {
            dv.d_star = v;
        }
    }
    dv.attaining_vertex = dv.attaining.front();
    for (const auto& e : dv.attaining) {
        if (e.second < dv.attaining_vertex.second) dv.attaining_vertex = e;
    }
    return dv;
}

std::optional<Rational> d_star_excluding(const BiPoly& q, const Rational& l, Exponent excluded) {
    std::optional<Rational> best;
    for (const auto& e : q.support()) {
        if (e == excluded) continue;
        Rational v = Rational(e.first) / l + Rational(e.second);
        if (!best || v < *best) best = v;
    }
    return best;
}

double invariance_radii(const SkewProduct& f, const Classification& c, const DValue& dv, const Rational& l,
                        double r2) {
    if (c.case_tag == CaseTag::Case3) {
        throw std::domain_error("invariance_radii: no invariance bound is available for Case 3 outer wedges");
    }
    if (!(r2 > 0.0)) throw std::invalid_argument("invariance_radii: r2 must be positive");
    if (!(l == dv.l)) throw std::invalid_argument("invariance_radii: DValue was computed for another weight");
    const int delta = f.delta();
    if (dv.d_min < Rational(delta)) {
        throw std::domain_error("invariance_radii: D_l = " + dv.d_min.str() + " < delta = " + std::to_string(delta));
    }
    const double L = l.to_double();
    const double abs_a = std::abs(f.a());

    // Bounds |p(z)| >= lower(r1) |z|^delta and |p(z)| <= upper(r1) |z|^delta on |z| < r1.
    auto p_tail = [&](double r1) {
        double t = 0.0;
        for (const auto& [k, a] : f.p().terms()) {
            if (k > delta) t += std::abs(a) * std::pow(r1, k - delta);
        }
        return t;
    };

    const Rational lD = l * dv.d_min;
    double c_line = 0.0;
    std::vector<std::pair<double, double>> off;  // (|b| r2^j, exponent of r1)
    for (const auto& [e, b] : f.q().terms()) {
        const Rational excess = Rational(e.first) + l * Rational(e.second) - lD;
        const double coef = std::abs(b) * std::pow(r2, e.second);
        if (excess == Rational(0)) {
            c_line += coef;
        } else {
            off.emplace_back(coef, excess.to_double());
        }
    }
    auto c_off = [&](double r1) {
        double t = 0.0;
        for (const auto& [coef, ex] : off) t += coef * std::pow(r1, ex);
        return t;
    };

    const double E = (l * (dv.d_min - Rational(delta))).to_double();
    const bool balanced = E == 0.0;

    double r1 = 0.5;
    if (!balanced) r1 = 0.5 * std::pow(r2 * std::pow(abs_a, L) / c_line, 1.0 / E);
    if (balanced && c_line / std::pow(abs_a, L) >= r2 / 2) {
        throw std::domain_error("invariance_radii: r2 too large for the balanced bound (need sum |b| r2^j < r2/2)");
    }

    for (int halving = 0; halving <= 64; ++halving, r1 *= 0.5) {
        const double lower = abs_a - p_tail(r1);
        const double upper = abs_a + p_tail(r1);
        if (lower <= 0.0 || upper * std::pow(r1, delta - 1) >= 1.0) continue;
        const double scale = std::pow(lower, L);
        if (balanced) {
            if (c_line / scale < r2 / 2 && c_off(r1) / scale < r2 / 2) return r1;
        } else if ((c_line + c_off(r1)) / scale * std::pow(r1, E) < r2) {
            return r1;
        }
    }
    throw std::runtime_error("invariance_radii: no radius found within 64 halvings");
}

}  // namespace skewdyn
