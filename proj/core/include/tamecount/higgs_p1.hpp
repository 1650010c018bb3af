#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tamecount/finite_field.hpp"
#include "tamecount/numtheory.hpp"
#include "tamecount/ramification.hpp"

namespace tamecount {

// |P^N(F_Q)|, and 0 for N < 0.
Integer proj_count(const Integer& Q, std::int64_t N);

// Free: at a marked point where the Higgs field vanishes either line of the
// flag may be chosen (weight 2). Forced: the line is always fixed (weight 1).
enum class LinePolicy { Free, Forced };

// An explicit closed point of P^1 over F_Q, used only by the oracle.
struct OraclePoint {
    bool infinity = false;
    std::vector<FiniteField::Elem> poly;  // monic irreducible, lowest degree first
};

struct MarkedPoint {
    std::uint64_t degree = 1;
    bool require_nonzero = false;
    std::optional<OraclePoint> point;
};

// Stable graded rank-2 Higgs bundles of odd degree e on P^1 over F_Q with
// marked closed points.
struct GrConfig {
    Integer Q;
    std::int64_t e = 1;
    std::vector<MarkedPoint> marked;
    LinePolicy policy = LinePolicy::Free;
};

// Depends on the marked points only through their degrees, so it is a
// polynomial in Q even when that many points do not exist over F_Q. With
// require_nonzero flags on such impossible sets it can go negative, which
// raises InvariantError.
Integer grcount(const GrConfig& c);

// Enumerates binary forms explicitly. Q must equal the field size.
Integer grcount_oracle(const FiniteField& f, const GrConfig& c, std::uint64_t max_forms = 2'000'000);

// Monic irreducible polynomials of degree d over f, in enumeration order.
std::vector<std::vector<FiniteField::Elem>> monic_irreducibles(const FiniteField& f, unsigned d);
// Pairwise distinct closed points of P^1 with the requested degrees
// (infinity is used for the first degree-1 request).
std::vector<OraclePoint> distinct_closed_points(const FiniteField& f, const std::vector<std::uint64_t>& degrees);

// Coefficient attached to a subset V of the unipotent places:
// Geom: (-2)^{|S_u - V|};  Intro: (-1)^{|S_u - V|} 2^{|V|}.
enum class HiggConvention { Geom, Intro };
const char* convention_name(HiggConvention c);

// Aggregated genus-0 Higgs count over F_{q^k}. Throws ValidationError if the
// places do not fit on P^1, UnsupportedError if a cuspidal place survives
// base change to F_{q^k}.
Integer higg_p1(const RamificationConfig& c, std::uint64_t k, HiggConvention conv, std::int64_t e = 1);

// sum_{i=3}^{n} floor((i-1)/2) Q^{n-i}
Integer example_closed_form(std::uint64_t n, const Integer& Q);

}  // namespace tamecount
