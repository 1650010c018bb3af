#pragma once

#include <cstdint>
#include <vector>

#include "tamecount/numtheory.hpp"

namespace tamecount {

struct FieldDescriptor {
    std::uint64_t p = 0;
    unsigned m = 0;
    IntPoly modulus;  // monic irreducible of degree m over F_p, coefficients in [0, p)
    std::uint64_t size() const;
};

// Smallest monic irreducible modulus of degree m, comparing coefficient
// vectors (c_0, c_1, ..., c_{m-1}) lexicographically.
FieldDescriptor finite_field_make(std::uint64_t p, unsigned m);

// Brute-force irreducibility over F_p; coefficients are reduced mod p first.
bool is_irreducible_mod_p(const std::vector<std::uint64_t>& poly, std::uint64_t p);

// Arithmetic in F_p[y]/(modulus). Elements are encoded as integers
// sum_i c_i p^i in [0, p^m), so 0 and 1 are the field's zero and one.
class FiniteField {
public:
    using Elem = std::uint32_t;

    explicit FiniteField(FieldDescriptor d);

    const FieldDescriptor& descriptor() const { return d_; }
    std::uint64_t size() const { return size_; }
    std::uint64_t characteristic() const { return d_.p; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(std::int64_t v) const;  // image of an integer in the prime field
    Elem from_coeffs(const std::vector<std::uint64_t>& c) const;
    std::vector<std::uint64_t> coeffs(Elem a) const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const {
        return sub_table_.empty() ? add(a, neg(b)) : sub_table_[a * size_ + b];
    }
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;  // throws std::domain_error on zero
    Elem pow(Elem a, std::uint64_t e) const;
    bool eq(Elem a, Elem b) const { return a == b; }

    std::vector<Elem> elements() const;
    std::uint64_t order(Elem a) const;  // multiplicative order of a nonzero element

private:
    Elem mul_slow(Elem a, Elem b) const;

    FieldDescriptor d_;
    std::uint64_t size_;
    std::vector<Elem> mul_table_;  // filled for small fields only
    std::vector<Elem> sub_table_;
};

}  // namespace tamecount
