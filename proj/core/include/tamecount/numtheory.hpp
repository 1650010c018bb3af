#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace tamecount {

using Integer = mpz_class;
using Rational = mpq_class;

// Elementary arithmetic on desk-scale machine integers.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);  // ascending
bool is_prime(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);  // throws on overflow

int moebius(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
Integer ramanujan_sum(std::uint64_t n, std::int64_t i);

Integer ipow(const Integer& base, std::uint64_t exp);
// Returns (p, m) with q = p^m, or nullopt if q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(const Integer& q);
// Also handles values beyond 64 bits (e.g. q^k after base change).
bool is_prime_power(const Integer& q);

// Dense integer polynomial, lowest degree first, no trailing zeros.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs);
    static IntPoly monomial(const Integer& c, std::size_t deg);

    const std::vector<Integer>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
    Integer leading() const { return c_.empty() ? Integer(0) : c_.back(); }
    Integer eval(const Integer& x) const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    // Division by a monic polynomial; returns (quotient, remainder).
    std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& m) const;

    std::string to_string(char var = 'x') const;

private:
    void trim();
    std::vector<Integer> c_;
};

IntPoly cyclotomic_poly(std::uint64_t n);

// Element of Z[zeta_n] in the power basis 1, zeta, ..., zeta^{phi(n)-1}.
class CyclotomicElement {
public:
    CyclotomicElement(std::uint64_t n, std::vector<Integer> coords);
    std::uint64_t conductor() const { return n_; }
    const std::vector<Integer>& coords() const { return coords_; }
    bool is_zero() const;
    std::string to_string() const;

    friend CyclotomicElement operator+(const CyclotomicElement& a, const CyclotomicElement& b);
    friend CyclotomicElement operator*(const CyclotomicElement& a, const CyclotomicElement& b);
    friend bool operator==(const CyclotomicElement& a, const CyclotomicElement& b) {
        return a.n_ == b.n_ && a.coords_ == b.coords_;
    }

private:
    std::uint64_t n_;
    std::vector<Integer> coords_;
};

// Reduces sum_j raw[j] zeta_n^j modulo Phi_n. raw must have length n.
CyclotomicElement cyclo_reduce(const std::vector<Integer>& raw, std::uint64_t n);
std::optional<Integer> as_rational_integer(const CyclotomicElement& e);

// Parses "a/b" or "a" into a reduced rational; throws std::invalid_argument.
Rational parse_rational(const std::string& text);
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

}  // namespace tamecount
