#include <doctest.h>

#include "support/generators.hpp"
#include "tamecount/errors.hpp"
#include "tamecount/lefschetz.hpp"
#include "tamecount/ramification.hpp"

using namespace tamecount;

namespace {

PlaceDatum place(std::uint64_t d, PlaceType t, std::vector<std::string> e) {
    PlaceDatum v{d, t, {}};
    for (auto& s : e) v.exps.push_back(RationalMod1::parse(s));
    return v;
}

RamificationConfig four_r() {
    RamificationConfig c{5, {}};
    for (int i = 0; i < 4; ++i) c.places.push_back(place(1, PlaceType::R, {"1/4", "3/4"}));
    return c;
}

RamificationConfig two_r_q3() {
    return {3, {place(1, PlaceType::R, {"0/2", "1/2"}), place(1, PlaceType::R, {"0/2", "1/2"})}};
}

}  // namespace

TEST_SUITE("ramification") {

TEST_CASE("rational mod 1") {
    CHECK(RationalMod1(5, 4) == RationalMod1(1, 4));
    CHECK(RationalMod1(-1, 4) == RationalMod1(3, 4));
    CHECK(RationalMod1(2, 4).den() == 2);
    CHECK((RationalMod1(1, 3) * Integer(2)) == RationalMod1(2, 3));
    CHECK((RationalMod1(2, 3) + RationalMod1(1, 3)) == RationalMod1());
    CHECK(RationalMod1::parse("0/2").to_string() == "0/1");
}

TEST_CASE("validation examples") {
    CHECK(validate_config({3, {place(1, PlaceType::R, {"0/2", "1/2"})}}).empty());
    auto v = validate_config({3, {place(1, PlaceType::R, {"0/2", "0/2"})}});
    REQUIRE(v.size() == 1);
    CHECK(v[0].place == 0);
    CHECK(v[0].message.find("distinct") != std::string::npos);
    CHECK(validate_config({2, {place(1, PlaceType::C, {"1/3"})}}).empty());
    CHECK_FALSE(validate_config({2, {place(1, PlaceType::C, {"1/5"})}}).empty());  // 5 does not divide 3
    CHECK_FALSE(validate_config({4, {place(1, PlaceType::C, {"1/3"})}}).empty());  // fixed by q
    CHECK_FALSE(validate_config({3, {place(1, PlaceType::S, {"1/4"})}}).empty());
    CHECK_FALSE(validate_config({3, {place(1, PlaceType::R, {"1/2"})}}).empty());  // arity
    CHECK_FALSE(validate_config({6, {}}).empty());
    CHECK_THROWS_AS(require_valid({3, {place(2, PlaceType::S, {"1/7"})}}), ValidationError);
}

TEST_CASE("geometric points") {
    auto t1 = geometric_points({3, {place(1, PlaceType::R, {"0/2", "1/2"})}});
    REQUIRE(t1.points.size() == 1);
    CHECK(t1.points[0].e1 == RationalMod1(0, 1));
    CHECK(t1.points[0].e2 == RationalMod1(1, 2));
    auto t2 = geometric_points({2, {place(1, PlaceType::C, {"1/3"})}});
    CHECK(t2.points[0].e2 == RationalMod1(2, 3));
    auto t3 = geometric_points({2, {place(2, PlaceType::C, {"1/5"})}});
    REQUIRE(t3.points.size() == 2);
    CHECK(t3.points[0].e1 == RationalMod1(1, 5));
    CHECK(t3.points[0].e2 == RationalMod1(4, 5));
    CHECK(t3.points[1].e1 == RationalMod1(2, 5));
    CHECK(t3.points[1].e2 == RationalMod1(3, 5));
    CHECK(t3.points[0].next == 1);
    CHECK(t3.points[1].next == 0);
}

TEST_CASE("compatibility of the eigenvalue transport") {
    testgen::Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const Integer q = std::vector<int>{2, 3, 4, 5}[trial % 4];
        const auto c = testgen::random_config(rng, q);
        const auto tab = geometric_points(c);
        for (const auto& pt : tab.points) {
            const auto& nx = tab.points[pt.next];
            std::vector<RationalMod1> here{pt.e1, pt.e2}, there{nx.e1 * q, nx.e2 * q};
            std::sort(here.begin(), here.end());
            std::sort(there.begin(), there.end());
            CHECK(here == there);
        }
    }
}

TEST_CASE("product condition") {
    RamificationConfig two{5, {place(1, PlaceType::R, {"1/4", "3/4"}), place(1, PlaceType::R, {"1/4", "3/4"})}};
    CHECK(product_condition(two));
    RamificationConfig three{5, {}};
    for (int i = 0; i < 3; ++i) three.places.push_back(place(1, PlaceType::R, {"0", "2/4"}));
    CHECK_FALSE(product_condition(three));
    CHECK(product_condition({7, {}}));
}

TEST_CASE("P_R examples") {
    auto s = build_PR(two_r_q3());
    CHECK(s.elements.size() == 2);
    CHECK(s.frob == std::vector<std::size_t>{0, 1});
    CHECK(s.sigma == std::vector<std::size_t>{1, 0});
    CHECK(build_PR(four_r()).elements.size() == 8);
    auto one = build_PR({3, {place(1, PlaceType::S, {"0"})}});
    CHECK(one.elements.size() == 1);
    CHECK(one.sigma[0] == 0);
    for (std::uint64_t k = 1; k <= 6; ++k) {
        CHECK(c_b(two_r_q3(), k) == FixedCounts{2, 0});
        CHECK(c_b(four_r(), k) == FixedCounts{8, 0});
        CHECK(c_b(RamificationConfig{2, {place(1, PlaceType::C, {"1/3"})}}, k) == FixedCounts{0, 0});
    }
}

TEST_CASE("point bound is enforced") {
    RamificationConfig big{3, {}};
    for (int i = 0; i < 7; ++i) big.places.push_back(place(3, PlaceType::S, {"0"}));
    CHECK_THROWS_AS(build_PR(big), ResourceError);
    CHECK_NOTHROW(build_PR(big, 21));
}

TEST_CASE("oracle examples") {
    CHECK(c_b_oracle({5, {}}, 3) == FixedCounts{1, 1});
    RamificationConfig c2{2, {place(2, PlaceType::C, {"1/5"})}};
    for (std::uint64_t k = 1; k <= 12; ++k) {
        CHECK(c_b_oracle(two_r_q3(), k) == c_b(two_r_q3(), k));
        CHECK(c_b_oracle(four_r(), k) == c_b(four_r(), k));
        CHECK(c_b_oracle(c2, k) == c_b(c2, k));
    }
}

TEST_CASE("randomized properties of c and b") {
    testgen::Rng rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const Integer q = std::vector<int>{2, 3, 4, 5}[trial % 4];
        testgen::ConfigShape shape;
        shape.max_points = 6;
        const auto c = testgen::random_config(rng, q, shape);
        const PRState s = build_PR(c);
        const bool det_one = product_condition(c);
        for (std::size_t i = 0; i < s.elements.size(); ++i) {
            if (!det_one) {
                CHECK(s.sigma[i] == PRState::kOutside);
                continue;
            }
            CHECK(s.frob[s.sigma[i]] == s.sigma[s.frob[i]]);
            CHECK(s.sigma[s.sigma[i]] == i);
        }
        const FixedCounts one = c_b(s, 1);
        const bool cr = has_type(c, {PlaceType::C, PlaceType::R});
        const std::uint64_t n = pr_period(c);
        for (std::uint64_t k = 1; k <= 12; ++k) {
            const FixedCounts ck = c_b(s, k);
            CHECK(ck == c_b(s, k + n));
            if (!det_one) CHECK(ck.b == 0);
            if (!cr) {
                CHECK(ck.c == one.c);
                CHECK(ck.c <= 1);
                if (det_one) CHECK(ck.b == ck.c);
            } else if (det_one) {
                CHECK((ck.c + ck.b) % 2 == 0);
            }
            CHECK(c_b(base_change(c, k), 1) == ck);
        }
        bool even_c = false, odd_r = false;
        for (const auto& v : c.places) {
            even_c = even_c || (v.type == PlaceType::C && v.degree % 2 == 0);
            odd_r = odd_r || (v.type == PlaceType::R && v.degree % 2 == 1);
        }
        if (even_c || odd_r) CHECK(one.b == 0);
        if (has_type(c, {PlaceType::C})) CHECK(one.c == 0);
        if (degree_sum(c, {PlaceType::R}) % 2 == 1)
            for (std::uint64_t k = 1; k <= n; ++k) CHECK(c_b(s, k).b == 0);

        auto cert = [&](auto f) { return std::holds_alternative<LefschetzDecomp>(certify_periodic(PeriodicFn::sample(n, f))); };
        CHECK(cert([&](std::uint64_t k) { return Rational(c_b(s, k).c); }));
        CHECK(cert([&](std::uint64_t k) { return Rational(c_b(s, k).b); }));
    }
}

TEST_CASE("c_b equals the oracle on all small configs") {
    testgen::Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const Integer q = std::vector<int>{2, 3, 4, 5}[trial % 4];
        testgen::ConfigShape shape;
        shape.max_points = 6;
        shape.max_places = 5;
        const auto c = testgen::random_config(rng, q, shape);
        const PRState s = build_PR(c);
        for (std::uint64_t k = 1; k <= 12; ++k) CHECK(c_b(s, k) == c_b_oracle(c, k));
    }
}

TEST_CASE("base change examples") {
    auto bc = base_change({2, {place(1, PlaceType::C, {"1/3"})}}, 2);
    CHECK(bc.q == 4);
    REQUIRE(bc.places.size() == 1);
    CHECK(bc.places[0].type == PlaceType::R);
    CHECK(bc.places[0].exps == std::vector<RationalMod1>{RationalMod1(1, 3), RationalMod1(2, 3)});

    RamificationConfig r3{2, {place(3, PlaceType::R, {"1/7", "3/7"})}};
    auto b3 = base_change(r3, 3);
    REQUIRE(b3.places.size() == 3);
    for (const auto& v : b3.places) {
        CHECK(v.degree == 1);
        CHECK(v.type == PlaceType::R);
    }
    CHECK(b3.places[1].exps[0] == RationalMod1(1, 7) * Integer(4));  // q^{1*(d-1)} = 4

    auto same = base_change(four_r(), 1);
    CHECK(same.q == 5);
    REQUIRE(same.places.size() == 4);
    CHECK(same.places[0].exps == four_r().places[0].exps);

    // An even-degree cuspidal place stays cuspidal when k / gcd(d, k) is odd.
    RamificationConfig c2{2, {place(2, PlaceType::C, {"1/5"})}};
    auto b2 = base_change(c2, 2);
    REQUIRE(b2.places.size() == 2);
    CHECK(b2.places[0].type == PlaceType::C);
    auto b4 = base_change(c2, 4);
    CHECK(b4.places[0].type == PlaceType::R);
}

}
