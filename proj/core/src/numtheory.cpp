#include "tamecount/numtheory.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace tamecount {

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p <= n / p; ++p) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        const std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].second == 1;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    const std::uint64_t g = gcd_u64(a, b);
    if (a / g > std::numeric_limits<std::uint64_t>::max() / b)
        throw std::overflow_error("lcm_u64: overflow");
    return a / g * b;
}

int moebius(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("moebius: n must be positive");
    int mu = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
    std::uint64_t phi = n;
    for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

Integer ramanujan_sum(std::uint64_t n, std::int64_t i) {
    if (n == 0) throw std::invalid_argument("ramanujan_sum: n must be positive");
    const std::uint64_t ai = i < 0 ? static_cast<std::uint64_t>(-(i + 1)) + 1 : static_cast<std::uint64_t>(i);
    const std::uint64_t g = gcd_u64(n, ai);  // gcd(n, 0) = n
    Integer s = 0;
    for (std::uint64_t d : divisors(g)) s += Integer(moebius(n / d)) * Integer(static_cast<unsigned long>(d));
    return s;
}

Integer ipow(const Integer& base, std::uint64_t exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(const Integer& q) {
    if (q < 2 || !q.fits_ulong_p()) return std::nullopt;
    auto f = factorize(q.get_ui());
    if (f.size() != 1) return std::nullopt;
    return f[0];
}

bool is_prime_power(const Integer& q) {
    if (q < 2) return false;
    if (q.fits_ulong_p()) return prime_power(q).has_value();
    if (mpz_probab_prime_p(q.get_mpz_t(), 40) != 0) return true;
    const std::size_t bits = mpz_sizeinbase(q.get_mpz_t(), 2);
    for (unsigned long e = 2; e <= bits; ++e) {
        Integer root;
        if (mpz_root(root.get_mpz_t(), q.get_mpz_t(), e) != 0) return is_prime_power(root);
    }
    return false;
}

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::monomial(const Integer& c, std::size_t deg) {
    std::vector<Integer> v(deg + 1, Integer(0));
    v[deg] = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer IntPoly::eval(const Integer& x) const {
    Integer acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> v(std::max(a.c_.size(), b.c_.size()), Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> v(std::max(a.c_.size(), b.c_.size()), Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> v(a.c_.size() + b.c_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(v));
}

std::pair<IntPoly, IntPoly> IntPoly::divmod_monic(const IntPoly& m) const {
    if (m.is_zero() || m.leading() != 1) throw std::invalid_argument("divmod_monic: divisor must be monic");
    std::vector<Integer> r = c_;
    const std::size_t dm = m.c_.size() - 1;
    if (r.size() <= dm) return {IntPoly{}, *this};
    std::vector<Integer> q(r.size() - dm, Integer(0));
    for (std::size_t i = r.size(); i-- > dm;) {
        const Integer lead = r[i];
        if (lead == 0) continue;
        q[i - dm] = lead;
        for (std::size_t j = 0; j <= dm; ++j) r[i - dm + j] -= lead * m.c_[j];
    }
    r.resize(dm);
    return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

std::string IntPoly::to_string(char var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Integer& a = c_[i];
        if (a == 0) continue;
        Integer mag = abs(a);
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || mag != 1) os << mag.get_str();
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

IntPoly cyclotomic_poly(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("cyclotomic_poly: n must be positive");
    // Memoized; conductors stay small but are requested repeatedly.
    static std::mutex mu;
    static std::map<std::uint64_t, IntPoly> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    IntPoly acc = IntPoly::monomial(1, n) - IntPoly::monomial(1, 0);
    for (std::uint64_t d : divisors(n)) {
        if (d == n) continue;
        auto [quot, rem] = acc.divmod_monic(cyclotomic_poly(d));
        if (!rem.is_zero()) throw std::logic_error("cyclotomic_poly: inexact division");
        acc = std::move(quot);
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(n, acc);
    return acc;
}

// ------------------------------------------------------ CyclotomicElement

CyclotomicElement::CyclotomicElement(std::uint64_t n, std::vector<Integer> coords)
    : n_(n), coords_(std::move(coords)) {
    if (n_ == 0) throw std::invalid_argument("CyclotomicElement: conductor must be positive");
    if (coords_.size() != euler_phi(n_))
        throw std::invalid_argument("CyclotomicElement: coordinate vector must have length phi(n)");
}

bool CyclotomicElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& x) { return x == 0; });
}

std::string CyclotomicElement::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ", " : "") << coords_[i].get_str();
    os << "] in Z[zeta_" << n_ << "]";
    return os.str();
}

static CyclotomicElement reduce_poly(const IntPoly& p, std::uint64_t n) {
    auto [q, r] = p.divmod_monic(cyclotomic_poly(n));
    std::vector<Integer> coords(euler_phi(n), Integer(0));
    for (std::size_t i = 0; i < r.coeffs().size(); ++i) coords[i] = r.coeffs()[i];
    return CyclotomicElement(n, std::move(coords));
}

CyclotomicElement operator+(const CyclotomicElement& a, const CyclotomicElement& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("CyclotomicElement: conductor mismatch");
    auto v = a.coords_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.coords_[i];
    return CyclotomicElement(a.n_, std::move(v));
}

CyclotomicElement operator*(const CyclotomicElement& a, const CyclotomicElement& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("CyclotomicElement: conductor mismatch");
    return reduce_poly(IntPoly(a.coords_) * IntPoly(b.coords_), a.n_);
}

CyclotomicElement cyclo_reduce(const std::vector<Integer>& raw, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("cyclo_reduce: n must be positive");
    if (raw.size() != n) throw std::invalid_argument("cyclo_reduce: raw vector must have length n");
    return reduce_poly(IntPoly(raw), n);
}

std::optional<Integer> as_rational_integer(const CyclotomicElement& e) {
    const auto& c = e.coords();
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) return std::nullopt;
    return c[0];
}

Rational parse_rational(const std::string& text) {
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational number: '" + text + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Integer& x) { return x.get_str(); }
std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace tamecount
