#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewdyn/algebra.hpp"
#include "skewdyn/rational.hpp"

namespace skewdyn {

struct NewtonPolygon {
    std::vector<Exponent> vertices;    // (n_k, m_k), n increasing, m decreasing
    std::vector<Rational> intercepts;  // T_1 .. T_{s-1}

    std::size_t s() const { return vertices.size(); }
    int n(std::size_t k) const { return vertices.at(k - 1).first; }   // 1-based
    int m(std::size_t k) const { return vertices.at(k - 1).second; }  // 1-based
    const Rational& T(std::size_t k) const { return intercepts.at(k - 1); }

    friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;
};

NewtonPolygon newton_polygon(const std::vector<Exponent>& support);
NewtonPolygon newton_polygon(const BiPoly& q);

enum class CaseTag { Case1, Case2, Case3, Case4 };
std::string to_string(CaseTag c);

struct DominantTerm {
    std::size_t vertex = 1;  // 1-based index k into the polygon
    int gamma = 0;
    int d = 0;
    CaseTag case_tag = CaseTag::Case1;
    Rational l1;
    std::optional<Rational> l2;  // empty means +infinity
};

struct Classification {
    NewtonPolygon polygon;
    int delta = 0;

    // The primary dominant term: (n_k, m_k) of the pair when delta = T_k.
    CaseTag case_tag = CaseTag::Case1;
    int gamma = 0;
    int d = 0;
    std::size_t vertex = 1;
    Rational l1;
    std::optional<Rational> l2;  // empty means +infinity

    // One entry, or two when delta equals an intercept; the primary term first.
    std::vector<DominantTerm> dominant;

    // gamma/(delta-d) when delta != d (negative when delta < d); the line-sweep
    // value when delta = d and gamma = 0; empty when delta = d and gamma > 0.
    std::optional<Rational> alpha;
    int lambda = 0;
    int c_infinity = 0;

    bool two_dominant_terms = false;
    bool special_case = false;  // (n_1, m_1) = (0, delta)
    bool d_ge_2 = false;
    bool gamma_positive = false;

    double alpha_real() const;  // throws when alpha is undefined
    // The classification seen from one of its dominant terms.
    Classification for_term(std::size_t index) const;
};

Classification classify(const NewtonPolygon& polygon, int delta);
Classification classify(const SkewProduct& f);

// Smallest l >= 0 for which the line x + l y = l delta enters the interior of
// N(q); 0 when the only vertex touched by every such line is (0, delta) and no
// line ever enters; empty when no vertex has m < delta.
std::optional<Rational> alpha_redefined(const NewtonPolygon& polygon, int delta);

}  // namespace skewdyn
