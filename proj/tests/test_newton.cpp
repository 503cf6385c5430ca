#include "doctest.h"
#include "skewdyn/newton.hpp"

using namespace skewdyn;

namespace {
BiPoly support(std::initializer_list<Exponent> s) {
    std::map<Exponent, Complex> t;
    for (auto e : s) t[e] = 1.0;
    return BiPoly(t);
}
SkewProduct map(int delta, std::initializer_list<Exponent> s) { return SkewProduct(UniPoly({{delta, 1.0}}), support(s)); }
}  // namespace

TEST_CASE("polygons") {
    auto a = newton_polygon(support({{1, 3}, {2, 2}}));
    CHECK(a.vertices == std::vector<Exponent>{{1, 3}, {2, 2}});
    CHECK(a.T(1) == Rational(4));
    auto b = newton_polygon(support({{3, 5}}));
    CHECK(b.s() == 1);
    CHECK(b.intercepts.empty());
    auto c = newton_polygon(support({{0, 4}, {2, 1}, {3, 0}, {5, 5}}));
    CHECK(c.vertices == std::vector<Exponent>{{0, 4}, {2, 1}, {3, 0}});
    CHECK(c.T(1) == Rational(4));
    CHECK(c.T(2) == Rational(3));
    CHECK_THROWS(newton_polygon(std::vector<Exponent>{}));
}

TEST_CASE("Case 2 with d = 0") {
    auto c = classify(map(2, {{0, 4}, {2, 1}, {3, 0}}));
    CHECK(c.case_tag == CaseTag::Case2);
    CHECK(c.gamma == 3);
    CHECK(c.d == 0);
    CHECK(c.l1 == Rational(1));
    CHECK_FALSE(c.l2.has_value());
    CHECK(*c.alpha == Rational(3, 2));
    CHECK(c.lambda == 2);
    CHECK(c.c_infinity == 2);
    CHECK_FALSE(c.two_dominant_terms);
}

TEST_CASE("two dominant terms at an intercept") {
    auto c = classify(map(4, {{1, 3}, {2, 2}}));
    CHECK(c.two_dominant_terms);
    REQUIRE(c.dominant.size() == 2);
    CHECK(c.dominant[0].case_tag == CaseTag::Case3);
    CHECK(c.dominant[0].gamma == 1);
    CHECK(c.dominant[0].d == 3);
    CHECK(c.dominant[1].case_tag == CaseTag::Case2);
    CHECK(c.dominant[1].gamma == 2);
    CHECK(c.dominant[1].d == 2);
    CHECK(*c.alpha == Rational(1));
    auto other = c.for_term(1);
    CHECK(other.case_tag == CaseTag::Case2);
    CHECK(other.gamma == 2);
    CHECK(*other.alpha == Rational(1));
}

TEST_CASE("Case 1 single vertex") {
    auto c = classify(map(2, {{1, 3}}));
    CHECK(c.case_tag == CaseTag::Case1);
    CHECK(c.gamma == 1);
    CHECK(c.d == 3);
    CHECK(c.l1 == Rational(0));
    CHECK_FALSE(c.l2.has_value());
    CHECK(*c.alpha == Rational(-1));
    CHECK(c.lambda == 3);
}

TEST_CASE("Case 3 and Case 4") {
    auto c3 = classify(map(5, {{1, 3}, {4, 2}}));
    CHECK(c3.case_tag == CaseTag::Case3);
    CHECK(c3.l1 == Rational(0));
    CHECK(*c3.l2 == Rational(3));
    CHECK(*c3.alpha == Rational(1, 2));
    auto c4 = classify(map(4, {{0, 5}, {1, 3}, {4, 2}}));
    CHECK(c4.case_tag == CaseTag::Case4);
    CHECK(c4.gamma == 1);
    CHECK(c4.d == 3);
    CHECK(c4.l1 == Rational(1, 2));
    CHECK(*c4.l2 == Rational(5, 2));
    CHECK(*c4.alpha == Rational(1));
}

TEST_CASE("redefined alpha") {
    CHECK(*alpha_redefined(newton_polygon(support({{0, 2}, {1, 1}})), 2) == Rational(1));
    CHECK(*alpha_redefined(newton_polygon(support({{3, 0}})), 2) == Rational(3, 2));
    CHECK(*alpha_redefined(newton_polygon(support({{0, 3}})), 3) == Rational(0));
    CHECK_FALSE(alpha_redefined(newton_polygon(support({{1, 3}})), 2).has_value());
    auto c = classify(map(2, {{0, 2}, {1, 1}}));
    CHECK(*c.alpha == Rational(1));
}
