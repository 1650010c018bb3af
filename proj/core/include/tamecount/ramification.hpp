#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "tamecount/lefschetz.hpp"
#include "tamecount/numtheory.hpp"

namespace tamecount {

// Exponent t in [0,1) of the root of unity exp(2 pi i t); always reduced.
class RationalMod1 {
public:
    RationalMod1() = default;
    explicit RationalMod1(const Rational& r);
    RationalMod1(long num, unsigned long den) : RationalMod1(Rational(num, den)) {}
    static RationalMod1 parse(const std::string& text);

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }
    Rational value() const { return Rational(num_, den_); }

    RationalMod1 operator+(const RationalMod1& o) const;
    RationalMod1 operator*(const Integer& m) const;
    bool operator<(const RationalMod1& o) const { return cmp(value(), o.value()) < 0; }
    bool operator==(const RationalMod1& o) const { return num_ == o.num_ && den_ == o.den_; }

    std::string to_string() const;

private:
    Integer num_ = 0;
    Integer den_ = 1;
};

// Local monodromy types: scalar, unipotent twist, split regular, cuspidal.
enum class PlaceType { S, U, R, C };
char type_char(PlaceType t);
PlaceType parse_place_type(const std::string& s);  // throws std::invalid_argument

struct PlaceDatum {
    std::uint64_t degree = 1;
    PlaceType type = PlaceType::S;
    std::vector<RationalMod1> exps;  // two for R, one otherwise
};

struct RamificationConfig {
    Integer q;
    std::vector<PlaceDatum> places;
};

struct Violation {
    std::size_t place;  // index into places, or SIZE_MAX for config-wide problems
    std::string message;
};

std::vector<Violation> validate_config(const RamificationConfig& c);
void require_valid(const RamificationConfig& c);  // throws ValidationError

// Partition helpers.
bool has_type(const RamificationConfig& c, std::initializer_list<PlaceType> types);
std::uint64_t degree_sum(const RamificationConfig& c, std::initializer_list<PlaceType> types);
std::size_t place_count(const RamificationConfig& c, std::initializer_list<PlaceType> types);
DegreeMultiset degree_multiset(const RamificationConfig& c, PlaceType type);

struct GeomPoint {
    std::size_t place;
    std::uint64_t j;
    RationalMod1 e1, e2;
    std::size_t next;  // index of x_{j+1 mod d} in the table
};

struct GeomPointTable {
    std::vector<GeomPoint> points;
};

// Point x_j of a degree-d place carries q^{j(d-1)} t; cuspidal pairs are
// (q^{j(d-1)} t, q^{j(d-1)+d} t).
GeomPointTable geometric_points(const RamificationConfig& c);
bool product_condition(const RamificationConfig& c);

inline constexpr std::size_t kDefaultPointBound = 20;

// Eigenvalue selections with product one, together with the Frobenius and
// swap permutations on them. Values are stored as numerators over a common
// denominator. The swap leaves P_R exactly when the product condition
// fails; sigma is then kOutside everywhere.
struct PRState {
    static constexpr std::size_t kOutside = static_cast<std::size_t>(-1);

    GeomPointTable table;
    std::uint64_t denom = 1;
    std::vector<std::vector<std::uint64_t>> elements;  // sorted
    std::vector<std::size_t> frob;
    std::vector<std::size_t> sigma;

    std::vector<RationalMod1> values(std::size_t i) const;
};

PRState build_PR(const RamificationConfig& c, std::size_t point_bound = kDefaultPointBound);

struct FixedCounts {
    Integer c;  // fixed points of frob^k
    Integer b;  // points with frob^k(p) = sigma(p)
    bool operator==(const FixedCounts&) const = default;
};

FixedCounts c_b(const PRState& s, std::uint64_t k);
FixedCounts c_b(const RamificationConfig& c, std::uint64_t k);
// Independent enumeration over index vectors; used for verification.
FixedCounts c_b_oracle(const RamificationConfig& c, std::uint64_t k,
                       std::size_t point_bound = kDefaultPointBound);

// A common period of k -> c_b(c, k).
std::uint64_t pr_period(const RamificationConfig& c);

RamificationConfig base_change(const RamificationConfig& c, std::uint64_t k);

}  // namespace tamecount
