#include "tamecount/lefschetz.hpp"

#include <sstream>
#include <stdexcept>

#include "tamecount/errors.hpp"

namespace tamecount {

Rational PeriodicFn::at(std::uint64_t k) const {
    if (period == 0 || values.size() != period) throw std::invalid_argument("PeriodicFn: malformed period");
    if (k == 0) throw std::invalid_argument("PeriodicFn: k must be positive");
    return values[(k - 1) % period];
}

PeriodicFn PeriodicFn::sample(std::uint64_t period, const std::function<Rational(std::uint64_t)>& f) {
    if (period == 0) throw std::invalid_argument("PeriodicFn::sample: period must be positive");
    PeriodicFn out{period, {}};
    out.values.reserve(period);
    for (std::uint64_t k = 1; k <= period; ++k) out.values.push_back(f(k));
    return out;
}

std::string LefschetzDecomp::to_string() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [i, m] : coeffs) {
        os << (first ? "" : ", ") << i << ": " << m.get_str();
        first = false;
    }
    os << "}";
    return os.str();
}

std::string CertifyRejection::to_string() const {
    std::ostringstream os;
    os << "rejected at i=" << i << ": S_i = " << value.to_string();
    if (quotient) os << ", S_i/n = " << quotient->get_str();
    return os.str();
}

CertifyResult certify_periodic(const PeriodicFn& f) {
    const std::uint64_t n = f.period;
    if (n == 0 || f.values.size() != n) throw std::invalid_argument("certify_periodic: malformed period");
    std::vector<Integer> ints;
    ints.reserve(n);
    for (std::uint64_t j = 0; j < n; ++j) {
        if (f.values[j].get_den() != 1)
            throw std::invalid_argument("certify_periodic: value at k=" + std::to_string(j + 1) + " is " +
                                        f.values[j].get_str() + ", not an integer");
        ints.push_back(f.values[j].get_num());
    }

    LefschetzDecomp decomp{n, {}};
    const Integer nz(static_cast<unsigned long>(n));
    for (std::uint64_t i = 1; i <= n; ++i) {
        // S_i = sum_j f(j) zeta^{-ij}
        std::vector<Integer> raw(n, Integer(0));
        for (std::uint64_t j = 1; j <= n; ++j) {
            const std::uint64_t e = (n - (i * j) % n) % n;
            raw[e] += ints[j - 1];
        }
        CyclotomicElement s = cyclo_reduce(raw, n);
        auto c = as_rational_integer(s);
        if (!c) return CertifyRejection{i, s, std::nullopt};
        if (*c % nz != 0) return CertifyRejection{i, s, Rational(*c, nz)};
        Integer m = *c / nz;
        if (m != 0) decomp.coeffs.emplace(i, m);
    }
    return decomp;
}

Integer eval_decomp(const LefschetzDecomp& d, std::uint64_t k) {
    const std::uint64_t n = d.period;
    if (n == 0) throw std::invalid_argument("eval_decomp: period must be positive");
    std::vector<Integer> raw(n, Integer(0));
    for (const auto& [i, m] : d.coeffs) raw[(i % n) * (k % n) % n] += m;
    auto v = as_rational_integer(cyclo_reduce(raw, n));
    if (!v) throw InvariantError("eval_decomp: value at k=" + std::to_string(k) + " is not a rational integer");
    return *v;
}

std::uint64_t DegreeMultiset::total() const {
    std::uint64_t s = 0;
    for (auto d : degrees) s += d;
    return s;
}

static void require_nonempty(const DegreeMultiset& a, const char* what) {
    if (a.degrees.empty()) throw std::invalid_argument(std::string(what) + ": empty degree multiset");
    for (auto d : a.degrees)
        if (d == 0) throw std::invalid_argument(std::string(what) + ": degrees must be positive");
}

Integer alpha(const DegreeMultiset& a, std::uint64_t k) {
    require_nonempty(a, "alpha");
    if (a.degrees.size() != 1) return 0;
    const std::uint64_t d = a.degrees[0];
    return gcd_u64(d, k) == 1 ? Integer(static_cast<unsigned long>(d)) : Integer(0);
}

Integer beta(const DegreeMultiset& a, std::uint64_t k) {
    require_nonempty(a, "beta");
    std::uint64_t orbits = 0;
    for (auto d : a.degrees) {
        const std::uint64_t g = gcd_u64(d, k);
        if ((d / g) % 2 == 0) return 0;
        orbits += g;
    }
    return ipow(2, orbits - 1);
}

int gamma(const DegreeMultiset& a, std::uint64_t k) {
    require_nonempty(a, "gamma");
    std::uint64_t orbits = 0;
    for (auto d : a.degrees) orbits += gcd_u64(d, k);
    return orbits % 2 == 0 ? 1 : -1;
}

Rational omega(const DegreeMultiset& a, std::uint64_t k) {
    const Integer b = beta(a, k);
    Rational r(alpha(a, k) + (a.total() % 2 == 0 ? b : Integer(-b)), 2);
    r.canonicalize();
    return r;
}

std::uint64_t orbit_fn_period(const DegreeMultiset& a) {
    std::uint64_t l = 1;
    for (auto d : a.degrees) l = lcm_u64(l, d);
    return 2 * l;
}

}  // namespace tamecount
