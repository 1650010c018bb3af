#include "tamecount/higgs_p1.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "tamecount/errors.hpp"

namespace tamecount {

Integer proj_count(const Integer& Q, std::int64_t N) {
    if (N < 0) return 0;
    if (Q < 2) throw std::invalid_argument("proj_count: Q must be at least 2");
    return (ipow(Q, static_cast<std::uint64_t>(N) + 1) - 1) / (Q - 1);
}

namespace {

// Closed points of degree d on P^1 over F_Q.
Integer p1_closed_points(const Integer& Q, std::uint64_t d) {
    Integer acc = 0;
    for (auto e : divisors(d)) acc += Integer(moebius(d / e)) * (ipow(Q, e) + 1);
    return acc / Integer(static_cast<unsigned long>(d));
}

void check_config(const GrConfig& c) {
    if (c.Q < 2) throw std::invalid_argument("grcount: Q must be at least 2");
    if (c.e % 2 == 0) throw std::invalid_argument("grcount: degree e must be odd");
    for (const auto& m : c.marked)
        if (m.degree == 0) throw std::invalid_argument("grcount: marked point degrees must be positive");
}

std::int64_t marked_degree(const GrConfig& c) {
    std::int64_t n = 0;
    for (const auto& m : c.marked) n += static_cast<std::int64_t>(m.degree);
    return n;
}

// Splitting parameters a <= (e-1)/2 with section degree h = 2a - e - 2 + N >= 0.
std::vector<std::int64_t> section_degrees(const GrConfig& c) {
    const std::int64_t n = marked_degree(c);
    std::vector<std::int64_t> hs;
    const std::int64_t a_max = (c.e - 1) / 2;  // e odd, so exact
    for (std::int64_t a = a_max;; --a) {
        const std::int64_t h = 2 * a - c.e - 2 + n;
        if (h < 0) break;
        hs.push_back(h);
    }
    return hs;
}

}  // namespace

Integer grcount(const GrConfig& c) {
    check_config(c);
    // Inclusion-exclusion over the set W of marked points forced to vanish:
    // total = sum_W |{theta vanishing on W}| * prod_{x in W} w_x with
    // w_x = -1 at required-nonzero points and (weight - 1) elsewhere. Only
    // deg W matters, so collect the products by total degree.
    const std::int64_t n = marked_degree(c);
    const Integer free_w = c.policy == LinePolicy::Free ? 1 : 0;
    std::vector<Integer> by_degree(static_cast<std::size_t>(n) + 1, Integer(0));
    by_degree[0] = 1;
    std::int64_t reach = 0;
    for (const auto& m : c.marked) {
        const Integer w = m.require_nonzero ? Integer(-1) : free_w;
        const auto d = static_cast<std::int64_t>(m.degree);
        if (w != 0)
            for (std::int64_t s = reach; s >= 0; --s)
                if (by_degree[s] != 0) by_degree[s + d] += w * by_degree[s];
        reach += d;
    }
    Integer total = 0;
    for (std::int64_t h : section_degrees(c))
        for (std::int64_t delta = 0; delta <= std::min(h, n); ++delta)
            if (by_degree[delta] != 0) total += by_degree[delta] * proj_count(c.Q, h - delta);
    if (total < 0) throw InvariantError("grcount: negative count " + total.get_str());
    return total;
}

// ------------------------------------------------------------------ oracle

namespace {

using Elem = FiniteField::Elem;
using FPoly = std::vector<Elem>;  // over F_Q, lowest degree first

void trim(FPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder modulo a monic polynomial.
FPoly rem_monic(const FiniteField& f, FPoly a, const FPoly& m) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const Elem lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = f.sub(a[shift + j], f.mul(lead, m[j]));
        trim(a);
    }
    return a;
}

// True iff m divides a; work is scratch space, reused across calls.
bool divides(const FiniteField& f, const FPoly& m, const FPoly& a, FPoly& work) {
    work.assign(a.begin(), a.end());
    trim(work);
    const std::size_t dm = m.size() - 1;
    while (work.size() > dm) {
        const Elem lead = work.back();
        const std::size_t shift = work.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) work[shift + j] = f.sub(work[shift + j], f.mul(lead, m[j]));
        trim(work);
    }
    return work.empty();
}

bool next_vector(const FiniteField& f, std::vector<Elem>& v) {
    for (auto& x : v) {
        if (x + 1 < f.size()) {
            ++x;
            return true;
        }
        x = 0;
    }
    return false;
}

}  // namespace

namespace {

// All monic polynomials of degree 1..max_degree.
std::vector<FPoly> monic_up_to(const FiniteField& f, unsigned max_degree) {
    std::vector<FPoly> out;
    for (unsigned e = 1; e <= max_degree; ++e) {
        std::vector<Elem> low(e, 0);
        do {
            FPoly p = low;
            p.push_back(f.one());
            out.push_back(p);
        } while (next_vector(f, low));
    }
    return out;
}

bool irreducible(const FiniteField& f, const FPoly& p, const std::vector<FPoly>& divisors) {
    const std::size_t d = p.size() - 1;
    for (const auto& g : divisors) {
        if (2 * (g.size() - 1) > d) break;  // divisors are sorted by degree
        if (rem_monic(f, p, g).empty()) return false;
    }
    return true;
}

// Calls visit on monic irreducibles of degree d in enumeration order until it
// returns false.
template <class Visit>
void for_each_irreducible(const FiniteField& f, unsigned d, Visit visit) {
    const auto divisors = monic_up_to(f, d / 2);
    std::vector<Elem> low(d, 0);
    do {
        FPoly p = low;
        p.push_back(f.one());
        if (irreducible(f, p, divisors) && !visit(p)) return;
    } while (next_vector(f, low));
}

}  // namespace

std::vector<std::vector<Elem>> monic_irreducibles(const FiniteField& f, unsigned d) {
    if (d == 0) throw std::invalid_argument("monic_irreducibles: degree must be positive");
    std::vector<FPoly> out;
    for_each_irreducible(f, d, [&](const FPoly& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

std::vector<OraclePoint> distinct_closed_points(const FiniteField& f, const std::vector<std::uint64_t>& degrees) {
    std::vector<OraclePoint> out;
    std::set<FPoly> used;
    bool infinity_used = false;
    for (auto d : degrees) {
        if (d == 0) throw std::invalid_argument("distinct_closed_points: degrees must be positive");
        if (d == 1 && !infinity_used) {
            infinity_used = true;
            out.push_back({true, {}});
            continue;
        }
        bool found = false;
        for_each_irreducible(f, static_cast<unsigned>(d), [&](const FPoly& p) {
            if (used.count(p)) return true;
            used.insert(p);
            out.push_back({false, p});
            found = true;
            return false;
        });
        if (!found) throw std::invalid_argument("distinct_closed_points: not enough closed points of degree " + std::to_string(d));
    }
    return out;
}

Integer grcount_oracle(const FiniteField& f, const GrConfig& c, std::uint64_t max_forms) {
    check_config(c);
    if (c.Q != Integer(static_cast<unsigned long>(f.size())))
        throw std::invalid_argument("grcount_oracle: Q does not match the field size");
    for (const auto& m : c.marked) {
        if (!m.point) throw std::invalid_argument("grcount_oracle: every marked point needs explicit coordinates");
        const auto deg = m.point->infinity ? 1 : m.point->poly.size() - 1;
        if (deg != m.degree) throw std::invalid_argument("grcount_oracle: point degree does not match its polynomial");
    }
    if (c.marked.size() > 32) throw ResourceError("grcount_oracle: more than 32 marked points");
    const std::uint64_t weight = c.policy == LinePolicy::Free ? 2 : 1;
    Integer total = 0;
    for (std::int64_t h : section_degrees(c)) {
        const Integer forms = proj_count(c.Q, h);
        if (forms > Integer(static_cast<unsigned long>(max_forms)))
            throw ResourceError("grcount_oracle: " + forms.get_str() + " forms of degree " + std::to_string(h) +
                                " exceed the enumeration bound");
        // Representatives up to scalar: the highest nonzero coefficient is 1.
        std::uint64_t subtotal = 0;  // flushed to total before it can overflow; weights are <= 2^32
        FPoly form, work;
        for (std::int64_t top = 0; top <= h; ++top) {
            std::vector<Elem> low(static_cast<std::size_t>(top), 0);
            do {
                form.assign(low.begin(), low.end());
                form.push_back(f.one());
                form.resize(static_cast<std::size_t>(h) + 1, 0);
                std::uint64_t w = 1;
                bool excluded = false;
                for (const auto& m : c.marked) {
                    const bool vanishes = m.point->infinity ? form[static_cast<std::size_t>(h)] == 0  // X^h coefficient
                                                            : divides(f, m.point->poly, form, work);
                    if (!vanishes) continue;
                    if (m.require_nonzero) {
                        excluded = true;
                        break;
                    }
                    w *= weight;
                }
                if (!excluded) subtotal += w;
                if (subtotal >> 62) {
                    total += Integer(static_cast<unsigned long>(subtotal));
                    subtotal = 0;
                }
            } while (next_vector(f, low));
        }
        total += Integer(static_cast<unsigned long>(subtotal));
    }
    return total;
}

// ------------------------------------------------------------- aggregation

const char* convention_name(HiggConvention c) { return c == HiggConvention::Geom ? "geom" : "intro"; }

Integer higg_p1(const RamificationConfig& c, std::uint64_t k, HiggConvention conv, std::int64_t e) {
    require_valid(c);
    const RamificationConfig bc = base_change(c, k);
    std::map<std::uint64_t, unsigned long> per_degree;
    for (const auto& v : c.places) ++per_degree[v.degree];
    for (const auto& [d, n] : per_degree)
        if (p1_closed_points(c.q, d) < n)
            throw ValidationError("P^1 over F_" + c.q.get_str() + " has fewer than " + std::to_string(n) +
                                      " closed points of degree " + std::to_string(d),
                                  "places");
    if (has_type(bc, {PlaceType::C}))
        throw UnsupportedError("higg_p1: cuspidal places remain over F_{q^" + std::to_string(k) +
                               "}; supply Higgs counts explicitly");
    std::vector<std::uint64_t> su, sr;
    for (const auto& v : bc.places) {
        if (v.type == PlaceType::U) su.push_back(v.degree);
        if (v.type == PlaceType::R) sr.push_back(v.degree);
    }
    if (su.size() > 24) throw ResourceError("higg_p1: too many unipotent places after base change");
    Integer total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << su.size()); ++mask) {
        GrConfig g{bc.q, e, {}, LinePolicy::Free};
        std::size_t in_v = 0;
        for (std::size_t i = 0; i < su.size(); ++i)
            if ((mask >> i) & 1) {
                g.marked.push_back({su[i], false, std::nullopt});
                ++in_v;
            }
        for (auto d : sr) g.marked.push_back({d, false, std::nullopt});
        const std::size_t out_v = su.size() - in_v;
        Integer coef = (out_v % 2 == 0) ? 1 : -1;
        coef *= conv == HiggConvention::Geom ? ipow(2, out_v) : ipow(2, in_v);
        total += coef * grcount(g);
    }
    return total;
}

Integer example_closed_form(std::uint64_t n, const Integer& Q) {
    if (n < 3) throw std::invalid_argument("example_closed_form: n must be at least 3");
    Integer s = 0;
    for (std::uint64_t i = 3; i <= n; ++i) s += Integer(static_cast<unsigned long>((i - 1) / 2)) * ipow(Q, n - i);
    return s;
}

}  // namespace tamecount
