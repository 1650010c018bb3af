#include "tamecount/curve.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "tamecount/errors.hpp"

namespace tamecount {

namespace {

using Matrix = std::vector<std::vector<Integer>>;

Matrix identity(std::size_t n) {
    Matrix m(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    Matrix r(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

Matrix power(Matrix base, std::uint64_t e) {
    Matrix r = identity(base.size());
    while (e) {
        if (e & 1) r = multiply(r, base);
        e >>= 1;
        if (e) base = multiply(base, base);
    }
    return r;
}

// Fraction-free Gaussian elimination.
Integer bareiss_det(Matrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Companion matrix of the monic polynomial sum_i a_i t^{2g-i}.
Matrix companion(const CurveSpec& c) {
    const std::size_t n = 2 * c.genus;
    Matrix m(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 1; i < n; ++i) m[i][i - 1] = 1;
    // Coefficient of t^j in the reciprocal polynomial is a_{2g-j}.
    for (std::size_t j = 0; j < n; ++j) m[j][n - 1] = -c.numerator.coeff(n - j);
    return m;
}

// e_1..e_n from power sums p_1..p_n (Newton). Throws if a division is inexact.
std::vector<Integer> elementary_from_power_sums(const std::vector<Integer>& p) {
    std::vector<Integer> e{Integer(1)};
    for (std::size_t k = 1; k <= p.size(); ++k) {
        Integer acc = 0;
        for (std::size_t i = 1; i <= k; ++i) {
            const Integer term = e[k - i] * p[i - 1];
            acc += (i % 2 == 1) ? term : Integer(-term);
        }
        const Integer kk(static_cast<unsigned long>(k));
        if (acc % kk != 0)
            throw ValidationError("Newton identity produced a non-integer e_" + std::to_string(k) +
                                  "; point counts are inconsistent");
        e.push_back(acc / kk);
    }
    return e;
}

using QPoly = std::vector<Rational>;  // lowest degree first, no trailing zeros

void qtrim(QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qrem(QPoly a, const QPoly& b) {
    qtrim(a);
    while (a.size() >= b.size()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        qtrim(a);
    }
    return a;
}

QPoly qdiv(QPoly a, const QPoly& b) {
    qtrim(a);
    QPoly quo(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    while (a.size() >= b.size()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        quo[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        qtrim(a);
    }
    return quo;
}

// P / gcd(P, P'): same roots, all simple, so the eigenvalue solve is well conditioned.
QPoly squarefree_part(const IntPoly& p) {
    QPoly a, d;
    for (long i = 0; i <= p.degree(); ++i) a.emplace_back(p.coeff(static_cast<std::size_t>(i)));
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<unsigned long>(i));
    qtrim(d);
    QPoly x = a, y = d;
    while (!y.empty()) {
        QPoly r = qrem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return qdiv(a, x);
}

}  // namespace

std::vector<std::string> curve_violations(const CurveSpec& c) {
    std::vector<std::string> out;
    const unsigned g = c.genus;
    if (c.q < 2 || !prime_power(c.q)) out.push_back("q = " + c.q.get_str() + " is not a prime power");
    if (c.numerator.degree() != static_cast<long>(2 * g)) {
        out.push_back("numerator degree " + std::to_string(c.numerator.degree()) + " differs from 2g = " +
                      std::to_string(2 * g));
        return out;
    }
    if (c.numerator.coeff(0) != 1) out.push_back("numerator constant term must be 1");
    for (unsigned i = 0; i <= g; ++i) {
        const Integer lhs = c.numerator.coeff(2 * g - i);
        const Integer rhs = ipow(c.q, g - i) * c.numerator.coeff(i);
        if (lhs != rhs)
            out.push_back("functional equation fails: a_" + std::to_string(2 * g - i) + " = " + lhs.get_str() +
                          " but q^" + std::to_string(g - i) + " a_" + std::to_string(i) + " = " + rhs.get_str());
    }
    if (c.numerator.eval(1) <= 0) out.push_back("P(1) must be positive");
    if (g > 0 && out.empty()) {
        // Roots of P must have |z| = q^{-1/2}; the only floating-point step.
        const QPoly sf = squarefree_part(c.numerator);
        const int n = static_cast<int>(sf.size()) - 1;
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
        const Rational lead = sf.back();
        for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
        for (int j = 0; j < n; ++j) comp(j, n - 1) = Rational(-sf[static_cast<std::size_t>(j)] / lead).get_d();
        Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
        const double target = 1.0 / std::sqrt(c.q.get_d());
        for (int i = 0; i < n; ++i) {
            const double r = std::abs(solver.eigenvalues()[i]);
            if (std::abs(r - target) > 1e-6 * std::max(1.0, target)) {
                std::ostringstream os;
                os << "root of P with |z| = " << r << " violates |z| = q^{-1/2} = " << target;
                out.push_back(os.str());
                break;
            }
        }
    }
    return out;
}

CurveSpec make_curve(const Integer& q, unsigned genus, const IntPoly& numerator) {
    CurveSpec c{q, genus, numerator};
    auto v = curve_violations(c);
    if (!v.empty()) throw ValidationError(v.front());
    return c;
}

CurveSpec genus0_curve(const Integer& q) { return make_curve(q, 0, IntPoly({Integer(1)})); }

CurveSpec zeta_from_point_counts(const Integer& q, unsigned genus, const std::vector<Integer>& counts) {
    if (genus == 0) throw ValidationError("point counts are only meaningful for genus >= 1");
    if (counts.size() != genus)
        throw ValidationError("expected " + std::to_string(genus) + " point counts, got " +
                              std::to_string(counts.size()));
    std::vector<Integer> p;
    for (unsigned k = 1; k <= genus; ++k) {
        if (counts[k - 1] < 0) throw ValidationError("point count N_" + std::to_string(k) + " is negative");
        p.push_back(ipow(q, k) + 1 - counts[k - 1]);
    }
    const auto e = elementary_from_power_sums(p);
    std::vector<Integer> a(2 * genus + 1, Integer(0));
    for (unsigned i = 0; i <= genus; ++i) a[i] = (i % 2 == 0) ? e[i] : Integer(-e[i]);
    for (unsigned i = 0; i < genus; ++i) a[2 * genus - i] = ipow(q, genus - i) * a[i];
    return make_curve(q, genus, IntPoly(std::move(a)));
}

std::vector<Integer> point_counts(const CurveSpec& c, unsigned count) {
    const unsigned n = 2 * c.genus;
    std::vector<Integer> e(n + 1, Integer(0));
    for (unsigned i = 0; i <= n; ++i) e[i] = (i % 2 == 0) ? c.numerator.coeff(i) : Integer(-c.numerator.coeff(i));
    std::vector<Integer> p;
    std::vector<Integer> out;
    for (unsigned k = 1; k <= count; ++k) {
        // p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
        Integer acc = 0;
        for (unsigned i = 1; i < k && i <= n; ++i) {
            const Integer t = e[i] * p[k - i - 1];
            acc += (i % 2 == 1) ? t : Integer(-t);
        }
        if (k <= n) {
            const Integer t = Integer(k) * e[k];
            acc += (k % 2 == 1) ? t : Integer(-t);
        }
        p.push_back(acc);
        out.push_back(ipow(c.q, k) + 1 - acc);
    }
    return out;
}

Integer closed_point_count(const CurveSpec& c, std::uint64_t d) {
    if (d == 0 || d > 4096) throw std::invalid_argument("closed_point_count: degree out of range");
    const auto n = point_counts(c, static_cast<unsigned>(d));
    Integer acc = 0;
    for (auto e : divisors(d)) acc += Integer(moebius(d / e)) * n[e - 1];
    return acc / Integer(static_cast<unsigned long>(d));
}

Integer pic_det(const CurveSpec& c, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("pic: k must be positive");
    if (c.genus == 0) return 1;
    Matrix m = power(companion(c), k);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) m[i][j] = (i == j ? Integer(1) : Integer(0)) - m[i][j];
    return bareiss_det(std::move(m));
}

Integer pic(const CurveSpec& c, std::uint64_t k) {
    Integer d = pic_det(c, k);
    if (d <= 0) throw InvariantError("pic: det(I - M^" + std::to_string(k) + ") = " + d.get_str() + " is not positive");
    return d;
}

Integer pic_sym2(const CurveSpec& c, std::uint64_t k) {
    const Integer p1 = pic(c, k);
    const Integer s = pic(c, 2 * k) + p1 * p1;
    if (s % 2 != 0) throw InvariantError("pic_sym2: pic(2k) + pic(k)^2 is odd at k=" + std::to_string(k));
    return s / 2;
}

}  // namespace tamecount
