#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tamecount/numtheory.hpp"

namespace tamecount {

// Zeta data of a smooth projective curve over F_q: Z(z) = P(z) / ((1-z)(1-qz))
// with P(z) = prod (1 - alpha_i z) of degree 2g.
struct CurveSpec {
    Integer q;
    unsigned genus = 0;
    IntPoly numerator;
};

// Lists every violated constraint (empty when valid).
std::vector<std::string> curve_violations(const CurveSpec& c);
// Validated construction; throws ValidationError naming the first violation.
CurveSpec make_curve(const Integer& q, unsigned genus, const IntPoly& numerator);
CurveSpec genus0_curve(const Integer& q);
CurveSpec zeta_from_point_counts(const Integer& q, unsigned genus, const std::vector<Integer>& counts);

// N_k = |X(F_{q^k})| for k = 1..count, derived from the numerator.
std::vector<Integer> point_counts(const CurveSpec& c, unsigned count);
// Number of closed points of degree d (Moebius inversion of the N_k).
Integer closed_point_count(const CurveSpec& c, std::uint64_t d);

// |Pic^0(F_{q^k})| = det(I - M^k), M the companion matrix of t^{2g} P(1/t).
Integer pic(const CurveSpec& c, std::uint64_t k);
// Signed determinant, exposed for the positivity check.
Integer pic_det(const CurveSpec& c, std::uint64_t k);
// (pic(2k) + pic(k)^2) / 2, the point count of the symmetric square.
Integer pic_sym2(const CurveSpec& c, std::uint64_t k);

}  // namespace tamecount
