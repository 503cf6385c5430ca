#include <cmath>
#include <random>

#include "doctest.h"
#include "skewdyn/blowup.hpp"

using namespace skewdyn;

namespace {
SkewProduct map(int delta, std::initializer_list<Exponent> s) {
    std::map<Exponent, Complex> t;
    double k = 1.0;
    for (auto e : s) t[e] = (k += 0.25);
    return SkewProduct(UniPoly({{delta, 1.0}}), BiPoly(t));
}
}  // namespace

TEST_CASE("pi1 exponent arithmetic and flags") {
    const auto f = map(2, {{0, 4}, {2, 1}, {3, 0}});
    auto r = blowup_pi1(f, 1);
    CHECK(r.exponent_map.at({0, 4}) == Exponent{2, 4});
    CHECK(r.exponent_map.at({2, 1}) == Exponent{1, 1});
    CHECK(r.exponent_map.at({3, 0}) == Exponent{1, 0});
    CHECK(r.gamma_tilde == Rational(1));
    CHECK(r.superattracting_at_origin);
    CHECK(r.degenerates_axis);
    CHECK(r.transformed.has_value());
    CHECK_THROWS_AS(blowup_pi1(f, 2), std::domain_error);

    const auto mono = map(2, {{1, 3}});
    auto m = blowup_pi1(mono, 3);
    CHECK(m.q_tilde.support() == std::vector<Exponent>{{4, 3}});

    // l = alpha with delta > d: gamma~ = 0 at (0, d)
    const auto g = map(3, {{1, 2}, {0, 4}});
    auto ga = blowup_pi1(g, 1);
    CHECK(ga.gamma_tilde == Rational(0));
    CHECK(ga.superattracting_at_origin);
    CHECK_FALSE(ga.degenerates_axis);
    const auto h = map(2, {{1, 1}, {0, 3}});
    auto ha = blowup_pi1(h, 1);
    CHECK(ha.gamma_tilde == Rational(0));
    CHECK_FALSE(ha.superattracting_at_origin);
}

TEST_CASE("pi1 conjugacy on sampled points") {
    const auto f = map(2, {{0, 4}, {2, 1}, {3, 0}, {1, 3}});
    auto r = blowup_pi1(f, 1);
    REQUIRE(r.transformed);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const Complex z(0.1 * U(rng), 0.1 * U(rng));
        const Complex c(0.1 * U(rng), 0.1 * U(rng));
        if (std::abs(z) < 1e-4) continue;
        const Complex direct = pi1_fiber_value(f, 1, z, c);
        const Complex via = eval_skew(*r.transformed, z, c).w;
        CHECK(std::abs(direct - via) <= 1e-10 * std::max(std::abs(via), 1e-300));
    }
}

TEST_CASE("table predictions agree with the construction") {
    std::mt19937 rng(5);
    int compared = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::map<Exponent, Complex> t;
        const int n = 1 + static_cast<int>(rng() % 5);
        for (int k = 0; k < n; ++k) t[{static_cast<int>(rng() % 7), static_cast<int>(rng() % 6)}] = 1.0;
        t.erase({0, 0});
        t.erase({0, 1});
        if (t.empty()) continue;
        const SkewProduct f(UniPoly({{2 + static_cast<int>(rng() % 3), 1.0}}), BiPoly(t));
        const auto c = classify(f);
        for (int l = 1; l <= 3; ++l) {
            const auto pred = check_blowup_tables(f, c, Rational(l));
            try {
                auto r = blowup_pi1(f, l);
                CHECK(pred.holomorphic);
                CHECK(pred.superattracting == r.superattracting_at_origin);
                CHECK(pred.degenerates == r.degenerates_axis);
                ++compared;
            } catch (const std::domain_error&) {
                CHECK_FALSE(pred.holomorphic);
            }
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("table predictions for rational weights") {
    // delta <= d: SA and Deg
    const auto a = map(2, {{1, 3}, {0, 4}});
    auto pa = check_blowup_tables(a, classify(a), Rational(1, 2));
    CHECK(pa.superattracting);
    CHECK(pa.degenerates);
    // (n1, m1) = (0, delta), 0 < l < alpha: SA, not Deg
    const auto b = map(3, {{0, 3}, {2, 1}});
    const auto cb = classify(b);
    auto pb = check_blowup_tables(b, cb, Rational(1, 2));
    CHECK(pb.superattracting);
    CHECK_FALSE(pb.degenerates);
}

TEST_CASE("pi2 and the composite map") {
    const auto f1 = map(4, {{1, 3}, {2, 2}});
    auto r = blowup_pi2(f1, 1);
    CHECK(r.exponent_map.at({1, 3}) == Exponent{1, 4});
    CHECK(r.exponent_map.at({2, 2}) == Exponent{2, 4});
    CHECK(r.d_tilde == Rational(4));
    CHECK(r.first_component->first == Rational(3));
    CHECK(r.first_component->second == Rational(0));

    const auto single = map(5, {{1, 3}});
    auto s = blowup_pi2(single, 1);
    CHECK(s.q_tilde.support() == std::vector<Exponent>{{1, 4}});

    CHECK_THROWS_AS(blowup_pi2(map(4, {{2, 3}}), 1), std::domain_error);

    // Case 4 map with l1 = 1, l2 = 1/2
    const auto f = map(7, {{0, 8}, {4, 4}, {7, 2}});
    const auto c = classify(f);
    REQUIRE(c.case_tag == CaseTag::Case4);
    CHECK(c.l1 == Rational(1));
    CHECK(*c.l2 == Rational(1, 2));
    auto step1 = blowup_pi1(f, 1);
    REQUIRE(step1.transformed);
    CHECK(classify(*step1.transformed).case_tag == CaseTag::Case3);
    auto step2 = blowup_pi2(*step1.transformed, 2);
    for (const auto& [e, b] : f.q().terms()) {
        CHECK(step2.exponent_map.at(step1.exponent_map.at(e)) == composite_exponent(e, 1, 2, 7));
    }
}
