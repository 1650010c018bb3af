#include <doctest.h>

#include "support/generators.hpp"
#include "tamecount/curve.hpp"
#include "tamecount/errors.hpp"
#include "tamecount/higgs_p1.hpp"

using namespace tamecount;

namespace {

// Independent Pic oracle: power sums of the Frobenius eigenvalues from the
// numerator, then prod (1 - alpha_i^k) through the power sums of alpha^k.
Integer pic_oracle(const CurveSpec& c, std::uint64_t k) {
    const std::size_t n = 2 * c.genus;
    if (n == 0) return 1;
    // e_i(alpha) = (-1)^i a_i
    std::vector<Integer> e(n + 1);
    for (std::size_t i = 0; i <= n; ++i) e[i] = (i % 2 ? -1 : 1) * c.numerator.coeff(i);
    std::vector<Integer> p(n * k + 1, Integer(0));  // p[j] = sum alpha^j
    for (std::size_t j = 1; j <= n * k; ++j) {
        Integer acc = 0;
        for (std::size_t i = 1; i <= std::min(j, n); ++i) {
            const Integer term = (i == j) ? Integer(static_cast<unsigned long>(j)) * e[i] : e[i] * p[j - i];
            acc += (i % 2 ? 1 : -1) * term;
        }
        p[j] = acc;
    }
    // elementary symmetric functions of beta = alpha^k from P_j = p[jk]
    std::vector<Integer> f(n + 1, Integer(0));
    f[0] = 1;
    for (std::size_t j = 1; j <= n; ++j) {
        Integer acc = 0;
        for (std::size_t i = 1; i <= j; ++i) acc += (i % 2 ? 1 : -1) * f[j - i] * p[i * k];
        REQUIRE(acc % static_cast<unsigned long>(j) == 0);
        f[j] = acc / static_cast<unsigned long>(j);
    }
    Integer out = 0;
    for (std::size_t i = 0; i <= n; ++i) out += (i % 2 ? -1 : 1) * f[i];
    return out;
}

}  // namespace

TEST_SUITE("curve") {

TEST_CASE("zeta numerators from point counts") {
    CHECK(zeta_from_point_counts(2, 1, {2}).numerator == IntPoly({1, -1, 2}));
    CHECK(zeta_from_point_counts(2, 1, {3}).numerator == IntPoly({1, 0, 2}));
    CHECK(zeta_from_point_counts(3, 1, {7}).numerator == IntPoly({1, 3, 3}));
    CHECK_THROWS_AS(zeta_from_point_counts(2, 1, {9}), ValidationError);      // violates the Weil bound
    CHECK_THROWS_AS(zeta_from_point_counts(2, 1, {1, 2}), ValidationError);   // wrong length
    CHECK_THROWS_AS(zeta_from_point_counts(2, 0, {}), ValidationError);
    CHECK_THROWS_AS(zeta_from_point_counts(2, 1, {-1}), ValidationError);
}

TEST_CASE("numerator validation") {
    CHECK(curve_violations(CurveSpec{2, 1, IntPoly({1, -1, 2})}).empty());
    CHECK_FALSE(curve_violations(CurveSpec{2, 1, IntPoly({1, -1, 3})}).empty());  // functional equation
    CHECK_FALSE(curve_violations(CurveSpec{2, 1, IntPoly({2, -1, 2})}).empty());  // constant term
    CHECK_FALSE(curve_violations(CurveSpec{6, 0, IntPoly({1})}).empty());         // q not a prime power
    CHECK_FALSE(curve_violations(CurveSpec{2, 1, IntPoly({1, 3, 2})}).empty());   // |z| != q^{-1/2}
    CHECK_FALSE(curve_violations(CurveSpec{2, 1, IntPoly({1, 0})}).empty());      // degree
}

TEST_CASE("pic examples") {
    const auto g0 = genus0_curve(7);
    CHECK(pic(g0, 1) == 1);
    CHECK(pic(g0, 5) == 1);
    CHECK(pic_sym2(g0, 3) == 1);
    const auto e = make_curve(2, 1, IntPoly({1, -1, 2}));
    CHECK(pic(e, 1) == 2);
    CHECK(pic(e, 2) == 8);
    CHECK(pic(e, 3) == 14);
    CHECK(pic_sym2(e, 1) == 6);
    const auto e2 = make_curve(2, 1, IntPoly({1, 0, 2}));
    CHECK(pic(e2, 1) == 3);
    CHECK(pic_sym2(e2, 1) == 9);
}

TEST_CASE("pic properties on random curves") {
    testgen::Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const Integer q = std::vector<int>{2, 3, 4, 5, 7, 9}[trial % 6];
        const auto c = testgen::random_curve(rng, q, 1 + trial % 3);
        for (std::uint64_t k = 1; k <= 24; ++k) {
            const Integer pk = pic(c, k);
            CHECK(pk > 0);
            CHECK(pic_det(c, k) == pk);
            CHECK(pk == pic_oracle(c, k));
            for (std::uint64_t m = 2; k * m <= 24; ++m) CHECK(pic(c, k * m) % pk == 0);
            if (k <= 12) CHECK_NOTHROW(pic_sym2(c, k));
        }
        CHECK(pic(c, 1) == c.numerator.eval(1));
    }
}

TEST_CASE("point counts round trip") {
    testgen::Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const Integer q = std::vector<int>{2, 3, 5, 7}[trial % 4];
        const unsigned g = 1 + trial % 3;
        const auto c = testgen::random_curve(rng, q, g);
        const auto n = point_counts(c, g);
        CHECK(zeta_from_point_counts(q, g, n).numerator == c.numerator);
        for (const auto& x : point_counts(c, 6)) CHECK(x >= 0);
    }
}

TEST_CASE("closed points of P^1 match irreducible enumeration") {
    for (int Q : {2, 3, 4, 5, 7, 8, 9}) {
        const FiniteField f = testgen::field_of(Q);
        const CurveSpec p1 = genus0_curve(Q);
        // Degree 1 includes the point at infinity.
        CHECK(closed_point_count(p1, 1) == Integer(static_cast<unsigned long>(monic_irreducibles(f, 1).size() + 1)));
        for (unsigned d = 2; d <= (Q <= 3 ? 5u : 3u); ++d)
            CHECK(closed_point_count(p1, d) == Integer(static_cast<unsigned long>(monic_irreducibles(f, d).size())));
    }
}

}
