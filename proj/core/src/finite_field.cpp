#include "tamecount/finite_field.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace tamecount {

namespace {

using SmallPoly = std::vector<std::uint64_t>;  // over F_p, lowest degree first

void trim(SmallPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    // p is prime and small; Fermat.
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

SmallPoly rem_mod_p(SmallPoly a, const SmallPoly& m, std::uint64_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const std::uint64_t f = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = (a[shift + j] + (p - f) * m[j]) % p;
        trim(a);
    }
    return a;
}

}  // namespace

std::uint64_t FieldDescriptor::size() const {
    std::uint64_t s = 1;
    for (unsigned i = 0; i < m; ++i) s *= p;
    return s;
}

bool is_irreducible_mod_p(const std::vector<std::uint64_t>& poly, std::uint64_t p) {
    SmallPoly f;
    for (auto c : poly) f.push_back(c % p);
    trim(f);
    const std::size_t deg = f.empty() ? 0 : f.size() - 1;
    if (deg < 1) return false;
    // Try every monic divisor of degree 1..deg/2.
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            SmallPoly g(d + 1, 0);
            g[d] = 1;
            std::uint64_t t = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = t % p;
                t /= p;
            }
            if (rem_mod_p(f, g, p).empty()) return false;
        }
    }
    return true;
}

FieldDescriptor finite_field_make(std::uint64_t p, unsigned m) {
    if (!is_prime(p)) throw std::invalid_argument("finite_field_make: p = " + std::to_string(p) + " is not prime");
    if (m == 0) throw std::invalid_argument("finite_field_make: extension degree must be positive");
    FieldDescriptor d{p, m, {}};
    if (d.size() > (std::uint64_t{1} << 24)) throw std::invalid_argument("finite_field_make: field too large");
    // Enumerate (c_0, ..., c_{m-1}) with c_0 most significant.
    const std::uint64_t count = d.size();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        SmallPoly c(m + 1, 0);
        c[m] = 1;
        std::uint64_t t = idx;
        for (unsigned i = m; i-- > 0;) {
            c[i] = t % p;
            t /= p;
        }
        if (is_irreducible_mod_p(c, p)) {
            std::vector<Integer> coeffs;
            for (auto x : c) coeffs.emplace_back(static_cast<unsigned long>(x));
            d.modulus = IntPoly(std::move(coeffs));
            return d;
        }
    }
    throw std::logic_error("finite_field_make: no irreducible polynomial found");
}

FiniteField::FiniteField(FieldDescriptor d) : d_(std::move(d)), size_(d_.size()) {
    if (size_ > std::numeric_limits<Elem>::max()) throw std::invalid_argument("FiniteField: field too large");
    if (size_ <= 1024) {
        mul_table_.resize(size_ * size_);
        for (Elem a = 0; a < size_; ++a)
            for (Elem b = 0; b < size_; ++b) mul_table_[a * size_ + b] = mul_slow(a, b);
        sub_table_.resize(size_ * size_);
        for (Elem a = 0; a < size_; ++a)
            for (Elem b = 0; b < size_; ++b) sub_table_[a * size_ + b] = add(a, neg(b));
    }
}

std::vector<std::uint64_t> FiniteField::coeffs(Elem a) const {
    std::vector<std::uint64_t> c(d_.m, 0);
    for (unsigned i = 0; i < d_.m; ++i) {
        c[i] = a % d_.p;
        a = static_cast<Elem>(a / d_.p);
    }
    return c;
}

FiniteField::Elem FiniteField::from_coeffs(const std::vector<std::uint64_t>& c) const {
    std::vector<std::uint64_t> red(c.begin(), c.end());
    for (auto& x : red) x %= d_.p;
    SmallPoly mod;
    for (const auto& x : d_.modulus.coeffs()) mod.push_back(x.get_ui());
    red = rem_mod_p(red, mod, d_.p);
    std::uint64_t v = 0;
    for (std::size_t i = red.size(); i-- > 0;) v = v * d_.p + red[i];
    return static_cast<Elem>(v);
}

FiniteField::Elem FiniteField::from_int(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(d_.p);
    return static_cast<Elem>(((v % p) + p) % p);
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
    Elem r = 0, scale = 1;
    for (unsigned i = 0; i < d_.m; ++i) {
        r += static_cast<Elem>(((a % d_.p) + (b % d_.p)) % d_.p) * scale;
        a = static_cast<Elem>(a / d_.p);
        b = static_cast<Elem>(b / d_.p);
        scale = static_cast<Elem>(scale * d_.p);
    }
    return r;
}

FiniteField::Elem FiniteField::neg(Elem a) const {
    Elem r = 0, scale = 1;
    for (unsigned i = 0; i < d_.m; ++i) {
        r += static_cast<Elem>((d_.p - a % d_.p) % d_.p) * scale;
        a = static_cast<Elem>(a / d_.p);
        scale = static_cast<Elem>(scale * d_.p);
    }
    return r;
}

FiniteField::Elem FiniteField::mul_slow(Elem a, Elem b) const {
    auto ca = coeffs(a), cb = coeffs(b);
    std::vector<std::uint64_t> prod(2 * d_.m, 0);
    for (unsigned i = 0; i < d_.m; ++i)
        for (unsigned j = 0; j < d_.m; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % d_.p;
    return from_coeffs(prod);
}

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
    if (!mul_table_.empty()) return mul_table_[a * size_ + b];
    return mul_slow(a, b);
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

FiniteField::Elem FiniteField::inv(Elem a) const {
    if (a == 0) throw std::domain_error("FiniteField::inv: zero has no inverse");
    return pow(a, size_ - 2);
}

std::vector<FiniteField::Elem> FiniteField::elements() const {
    std::vector<Elem> out(size_);
    for (std::uint64_t i = 0; i < size_; ++i) out[i] = static_cast<Elem>(i);
    return out;
}

std::uint64_t FiniteField::order(Elem a) const {
    if (a == 0) throw std::domain_error("FiniteField::order: zero has no multiplicative order");
    for (std::uint64_t d : divisors(size_ - 1))
        if (pow(a, d) == one()) return d;
    throw std::logic_error("FiniteField::order: element order does not divide |F*|");
}

}  // namespace tamecount
