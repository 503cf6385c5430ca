#include "skewdyn/newton.hpp"

#include <algorithm>
#include <stdexcept>

namespace skewdyn {

namespace {

long long cross(const Exponent& o, const Exponent& a, const Exponent& b) {
    return static_cast<long long>(a.first - o.first) * (b.second - o.second) -
           static_cast<long long>(a.second - o.second) * (b.first - o.first);
}

}  // namespace

NewtonPolygon newton_polygon(const std::vector<Exponent>& support) {
    if (support.empty()) throw std::invalid_argument("newton_polygon: empty support");

    std::vector<Exponent> pts(support);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    // Pareto-minimal staircase: scanning by increasing i, keep strict new minima of j.
    std::vector<Exponent> stair;
    for (const auto& p : pts) {
        if (stair.empty() || p.second < stair.back().second) stair.push_back(p);
    }

    // Lower convex hull of the staircase; collinear points are not vertices.
    std::vector<Exponent> hull;
    for (const auto& p : stair) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
        hull.push_back(p);
    }

    NewtonPolygon np;
    np.vertices = hull;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const auto [nk, mk] = hull[k];
        const auto [nk1, mk1] = hull[k + 1];
        np.intercepts.push_back(Rational(mk) + Rational(nk) * Rational(mk - mk1, nk1 - nk));
    }
    return np;
}

NewtonPolygon newton_polygon(const BiPoly& q) { return newton_polygon(q.support()); }

std::string to_string(CaseTag c) {
    switch (c) {
        case CaseTag::Case1: return "Case1";
        case CaseTag::Case2: return "Case2";
        case CaseTag::Case3: return "Case3";
        case CaseTag::Case4: return "Case4";
    }
    return "?";
}

double Classification::alpha_real() const {
    if (!alpha) throw std::domain_error("alpha is undefined for delta = d with gamma > 0");
    return alpha->to_double();
}

namespace {

DominantTerm make_term(const NewtonPolygon& np, std::size_t k) {
    const std::size_t s = np.s();
    DominantTerm t;
    t.vertex = k;
    t.gamma = np.n(k);
    t.d = np.m(k);
    if (s == 1) {
        t.case_tag = CaseTag::Case1;
        t.l1 = Rational(0);
        return t;
    }
    auto slope_inv = [&](std::size_t a) {  // (n_{a+1} - n_a) / (m_a - m_{a+1})
        return Rational(np.n(a + 1) - np.n(a), np.m(a) - np.m(a + 1));
    };
    if (k == 1) {
        t.case_tag = CaseTag::Case3;
        t.l1 = Rational(0);
        t.l2 = slope_inv(1);
    } else if (k == s) {
        t.case_tag = CaseTag::Case2;
        t.l1 = slope_inv(s - 1);
    } else {
        t.case_tag = CaseTag::Case4;
        t.l1 = slope_inv(k - 1);
        t.l2 = slope_inv(k) - t.l1;
    }
    return t;
}

}  // namespace

Classification Classification::for_term(std::size_t index) const {
    Classification c = *this;
    const DominantTerm& t = dominant.at(index);
    c.case_tag = t.case_tag;
    c.gamma = t.gamma;
    c.d = t.d;
    c.vertex = t.vertex;
    c.l1 = t.l1;
    c.l2 = t.l2;
    c.lambda = std::max(delta, t.d);
    c.c_infinity = (t.gamma > 0 || delta <= t.d) ? delta : t.d;
    c.d_ge_2 = t.d >= 2;
    c.gamma_positive = t.gamma > 0;
    if (index != 0) std::swap(c.dominant[0], c.dominant[index]);
    return c;
}

std::optional<Rational> alpha_redefined(const NewtonPolygon& polygon, int delta) {
    std::optional<Rational> best;
    bool touches_origin_line = false;
    for (const auto& [n, m] : polygon.vertices) {
        if (m < delta) {
            Rational l(n, delta - m);
            if (!best || l < *best) best = l;
        } else if (n == 0 && m == delta) {
            touches_origin_line = true;
        }
    }
    if (!best && touches_origin_line) return Rational(0);
    return best;
}

Classification classify(const NewtonPolygon& np, int delta) {
    if (np.s() == 0) throw std::invalid_argument("classify: empty polygon");
    const std::size_t s = np.s();
    const Rational D(delta);

    std::vector<std::size_t> terms;
    if (s == 1) {
        terms = {1};
    } else if (D > np.T(1)) {
        terms = {1};
    } else if (D < np.T(s - 1)) {
        terms = {s};
    } else {
        for (std::size_t k = 1; k <= s - 1; ++k) {
            if (D == np.T(k)) {
                terms = {k, k + 1};
                break;
            }
            if (k >= 2 && np.T(k) < D && D < np.T(k - 1)) {
                terms = {k};
                break;
            }
        }
    }
    if (terms.empty()) throw std::logic_error("classify: no case matched");

    Classification c;
    c.polygon = np;
    c.delta = delta;
    for (std::size_t k : terms) c.dominant.push_back(make_term(np, k));
    c.two_dominant_terms = c.dominant.size() == 2;
    c.special_case = np.vertices.front() == Exponent{0, delta};

    const DominantTerm& t = c.dominant.front();
    if (delta != t.d) {
        c.alpha = Rational(t.gamma, delta - t.d);
    } else if (t.gamma == 0) {
        c.alpha = alpha_redefined(np, delta);
    }
    return c.for_term(0);
}

Classification classify(const SkewProduct& f) { return classify(newton_polygon(f.q()), f.delta()); }

}  // namespace skewdyn
