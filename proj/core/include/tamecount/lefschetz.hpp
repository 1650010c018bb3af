#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tamecount/numtheory.hpp"

namespace tamecount {

// A function on k >= 1 given by one period: f(k) = values[(k-1) mod n].
struct PeriodicFn {
    std::uint64_t period = 0;
    std::vector<Rational> values;

    Rational at(std::uint64_t k) const;
    static PeriodicFn sample(std::uint64_t period, const std::function<Rational(std::uint64_t)>& f);
};

// f(k) = sum_{i=1..n} m_i zeta_n^{ik}; absent residues have m_i = 0.
struct LefschetzDecomp {
    std::uint64_t period = 0;
    std::map<std::uint64_t, Integer> coeffs;

    std::string to_string() const;
};

struct CertifyRejection {
    std::uint64_t i = 0;               // offending residue
    CyclotomicElement value;           // reduced S_i
    std::optional<Rational> quotient;  // S_i / n when S_i is a rational integer
    std::string to_string() const;
};

using CertifyResult = std::variant<LefschetzDecomp, CertifyRejection>;

// Decides whether an integer-valued periodic function is a Z-combination of
// k -> zeta^k over n-th roots of unity. Throws std::invalid_argument if some
// value is not an integer.
CertifyResult certify_periodic(const PeriodicFn& f);
Integer eval_decomp(const LefschetzDecomp& d, std::uint64_t k);

// Orbit data of a permutation with cycles of the given lengths, e.g. the
// Frobenius acting on the geometric points above a set of closed points.
struct DegreeMultiset {
    std::vector<std::uint64_t> degrees;
    std::uint64_t total() const;
};

Integer alpha(const DegreeMultiset& a, std::uint64_t k);
Integer beta(const DegreeMultiset& a, std::uint64_t k);
int gamma(const DegreeMultiset& a, std::uint64_t k);
Rational omega(const DegreeMultiset& a, std::uint64_t k);
std::uint64_t orbit_fn_period(const DegreeMultiset& a);

}  // namespace tamecount
