#include "tamecount/ramification.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>

#include "tamecount/errors.hpp"

namespace tamecount {

// ------------------------------------------------------------ RationalMod1

RationalMod1::RationalMod1(const Rational& r) {
    Rational x = r;
    x.canonicalize();
    den_ = x.get_den();
    mpz_fdiv_r(num_.get_mpz_t(), x.get_num_mpz_t(), den_.get_mpz_t());
}

RationalMod1 RationalMod1::parse(const std::string& text) { return RationalMod1(parse_rational(text)); }

RationalMod1 RationalMod1::operator+(const RationalMod1& o) const { return RationalMod1(value() + o.value()); }

RationalMod1 RationalMod1::operator*(const Integer& m) const {
    Integer n = num_ * m;
    mpz_fdiv_r(n.get_mpz_t(), n.get_mpz_t(), den_.get_mpz_t());
    return RationalMod1(Rational(n, den_));
}

std::string RationalMod1::to_string() const { return num_.get_str() + "/" + den_.get_str(); }

char type_char(PlaceType t) {
    switch (t) {
        case PlaceType::S: return 's';
        case PlaceType::U: return 'u';
        case PlaceType::R: return 'r';
        case PlaceType::C: return 'c';
    }
    return '?';
}

PlaceType parse_place_type(const std::string& s) {
    if (s == "s") return PlaceType::S;
    if (s == "u") return PlaceType::U;
    if (s == "r") return PlaceType::R;
    if (s == "c") return PlaceType::C;
    throw std::invalid_argument("unknown place type '" + s + "' (expected s, u, r or c)");
}

// -------------------------------------------------------------- validation

namespace {

bool divides(const Integer& d, const Integer& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

bool contains(std::initializer_list<PlaceType> types, PlaceType t) {
    return std::find(types.begin(), types.end(), t) != types.end();
}

}  // namespace

std::vector<Violation> validate_config(const RamificationConfig& c) {
    std::vector<Violation> out;
    constexpr auto kAll = std::numeric_limits<std::size_t>::max();
    if (!is_prime_power(c.q)) out.push_back({kAll, "q = " + c.q.get_str() + " is not a prime power"});
    for (std::size_t i = 0; i < c.places.size(); ++i) {
        const auto& v = c.places[i];
        if (v.degree == 0) {
            out.push_back({i, "degree must be positive"});
            continue;
        }
        const std::size_t want = v.type == PlaceType::R ? 2 : 1;
        if (v.exps.size() != want) {
            out.push_back({i, std::string("type ") + type_char(v.type) + " requires " + std::to_string(want) +
                                  " exponent(s), got " + std::to_string(v.exps.size())});
            continue;
        }
        const Integer qd = ipow(c.q, v.degree);
        if (v.type == PlaceType::C) {
            const Integer& t = v.exps[0].den();
            if (!divides(t, qd * qd - 1))
                out.push_back({i, "cuspidal exponent " + v.exps[0].to_string() + " must have denominator dividing q^" +
                                      std::to_string(2 * v.degree) + " - 1"});
            else if (v.exps[0] * qd == v.exps[0])
                out.push_back({i, "cuspidal type requires q^d t != t, but " + v.exps[0].to_string() +
                                      " is fixed by q^" + std::to_string(v.degree)});
        } else {
            for (const auto& e : v.exps)
                if (!divides(e.den(), qd - 1))
                    out.push_back({i, "exponent " + e.to_string() + " must have denominator dividing q^" +
                                          std::to_string(v.degree) + " - 1"});
            if (v.type == PlaceType::R && v.exps[0] == v.exps[1])
                out.push_back({i, "regular type requires distinct eigenvalues"});
        }
    }
    return out;
}

void require_valid(const RamificationConfig& c) {
    auto v = validate_config(c);
    if (v.empty()) return;
    const auto& f = v.front();
    throw ValidationError(f.message, f.place == std::numeric_limits<std::size_t>::max()
                                         ? std::string("q")
                                         : "places[" + std::to_string(f.place) + "]");
}

bool has_type(const RamificationConfig& c, std::initializer_list<PlaceType> types) {
    return std::any_of(c.places.begin(), c.places.end(), [&](const PlaceDatum& v) { return contains(types, v.type); });
}

std::uint64_t degree_sum(const RamificationConfig& c, std::initializer_list<PlaceType> types) {
    std::uint64_t s = 0;
    for (const auto& v : c.places)
        if (contains(types, v.type)) s += v.degree;
    return s;
}

std::size_t place_count(const RamificationConfig& c, std::initializer_list<PlaceType> types) {
    return static_cast<std::size_t>(
        std::count_if(c.places.begin(), c.places.end(), [&](const PlaceDatum& v) { return contains(types, v.type); }));
}

DegreeMultiset degree_multiset(const RamificationConfig& c, PlaceType type) {
    DegreeMultiset m;
    for (const auto& v : c.places)
        if (v.type == type) m.degrees.push_back(v.degree);
    return m;
}

// --------------------------------------------------------- geometric points

GeomPointTable geometric_points(const RamificationConfig& c) {
    GeomPointTable tab;
    for (std::size_t i = 0; i < c.places.size(); ++i) {
        const auto& v = c.places[i];
        const std::size_t first = tab.points.size();
        const Integer qd = ipow(c.q, v.degree);
        for (std::uint64_t j = 0; j < v.degree; ++j) {
            const Integer shift = ipow(c.q, j * (v.degree - 1));
            GeomPoint pt{i, j, {}, {}, first + (j + 1) % v.degree};
            switch (v.type) {
                case PlaceType::S:
                case PlaceType::U:
                    pt.e1 = pt.e2 = v.exps.at(0) * shift;
                    break;
                case PlaceType::R:
                    pt.e1 = v.exps.at(0) * shift;
                    pt.e2 = v.exps.at(1) * shift;
                    break;
                case PlaceType::C:
                    pt.e1 = v.exps.at(0) * shift;
                    pt.e2 = pt.e1 * qd;
                    break;
            }
            tab.points.push_back(pt);
        }
    }
    return tab;
}

bool product_condition(const RamificationConfig& c) {
    RationalMod1 sum;
    for (const auto& pt : geometric_points(c).points) sum = sum + pt.e1 + pt.e2;
    return sum == RationalMod1();
}

// ---------------------------------------------------------------- P_R

namespace {

// Residues over a common denominator so the enumeration runs on machine words.
struct Residues {
    std::uint64_t denom = 1;
    std::uint64_t q_mod = 0;
    std::vector<std::uint64_t> e1, e2;
    std::vector<std::size_t> next;
};

Residues to_residues(const RamificationConfig& c, const GeomPointTable& tab) {
    Residues r;
    Integer l = 1;
    for (const auto& pt : tab.points) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), pt.e1.den().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), pt.e2.den().get_mpz_t());
    }
    if (!l.fits_ulong_p() || l > Integer(std::numeric_limits<std::uint32_t>::max()))
        throw ResourceError("eigenvalue denominators too large (common denominator " + l.get_str() + ")");
    r.denom = l.get_ui();
    Integer qm = c.q % l;
    r.q_mod = qm.get_ui();
    auto conv = [&](const RationalMod1& e) {
        Integer n = e.num() * (l / e.den());
        return static_cast<std::uint64_t>(n.get_ui());
    };
    for (const auto& pt : tab.points) {
        r.e1.push_back(conv(pt.e1));
        r.e2.push_back(conv(pt.e2));
        r.next.push_back(pt.next);
    }
    return r;
}

}  // namespace

std::vector<RationalMod1> PRState::values(std::size_t i) const {
    std::vector<RationalMod1> out;
    for (auto v : elements.at(i)) out.emplace_back(Rational(Integer(static_cast<unsigned long>(v)), Integer(static_cast<unsigned long>(denom))));
    return out;
}

PRState build_PR(const RamificationConfig& c, std::size_t point_bound) {
    PRState s;
    s.table = geometric_points(c);
    const std::size_t n = s.table.points.size();
    if (n > point_bound)
        throw ResourceError("P_R enumeration over " + std::to_string(n) + " geometric points exceeds the bound of " +
                            std::to_string(point_bound));
    const Residues r = to_residues(c, s.table);
    s.denom = r.denom;
    const std::uint64_t L = r.denom;

    // Depth-first over per-point choices; coinciding eigenvalues give one branch.
    std::vector<std::uint64_t> cur(n);
    auto rec = [&](auto&& self, std::size_t x, std::uint64_t sum) -> void {
        if (x == n) {
            if (sum == 0) s.elements.push_back(cur);
            return;
        }
        cur[x] = r.e1[x];
        self(self, x + 1, (sum + cur[x]) % L);
        if (r.e2[x] != r.e1[x]) {
            cur[x] = r.e2[x];
            self(self, x + 1, (sum + cur[x]) % L);
        }
    };
    rec(rec, 0, 0);
    std::sort(s.elements.begin(), s.elements.end());

    auto index_of = [&](const std::vector<std::uint64_t>& t) -> std::size_t {
        auto it = std::lower_bound(s.elements.begin(), s.elements.end(), t);
        if (it == s.elements.end() || *it != t) return std::numeric_limits<std::size_t>::max();
        return static_cast<std::size_t>(it - s.elements.begin());
    };

    const bool det_one = product_condition(c);
    const std::size_t m = s.elements.size();
    s.frob.resize(m);
    s.sigma.resize(m);
    std::vector<std::uint64_t> img(n);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& t = s.elements[i];
        for (std::size_t x = 0; x < n; ++x) {
            img[x] = r.q_mod * t[r.next[x]] % L;  // both factors < 2^32
            if (img[x] != r.e1[x] && img[x] != r.e2[x])
                throw InvariantError("build_PR: Frobenius image is not an eigenvalue choice at a geometric point");
        }
        const std::size_t fi = index_of(img);
        if (fi == std::numeric_limits<std::size_t>::max())
            throw InvariantError("build_PR: Frobenius does not preserve P_R");
        s.frob[i] = fi;
        for (std::size_t x = 0; x < n; ++x) img[x] = (t[x] == r.e1[x]) ? r.e2[x] : r.e1[x];
        const std::size_t si = index_of(img);
        if (si == PRState::kOutside && det_one) throw InvariantError("build_PR: swap does not preserve P_R");
        s.sigma[i] = si;
    }
    for (std::size_t i = 0; i < m; ++i)
        if (s.sigma[i] != PRState::kOutside && s.frob[s.sigma[i]] != s.sigma[s.frob[i]]) throw InvariantError("build_PR: Frobenius and swap do not commute");
    return s;
}

FixedCounts c_b(const PRState& s, std::uint64_t k) {
    const std::size_t m = s.elements.size();
    // frob^k through the cycle decomposition.
    std::vector<std::size_t> pk(m, std::numeric_limits<std::size_t>::max());
    std::vector<std::size_t> cycle;
    for (std::size_t start = 0; start < m; ++start) {
        if (pk[start] != std::numeric_limits<std::size_t>::max()) continue;
        cycle.clear();
        std::size_t x = start;
        do {
            cycle.push_back(x);
            x = s.frob[x];
        } while (x != start);
        const std::size_t len = cycle.size();
        for (std::size_t p = 0; p < len; ++p) pk[cycle[p]] = cycle[(p + k % len) % len];
    }
    FixedCounts out{0, 0};
    for (std::size_t i = 0; i < m; ++i) {
        if (pk[i] == i) ++out.c;
        if (pk[i] == s.sigma[i]) ++out.b;
    }
    return out;
}

FixedCounts c_b(const RamificationConfig& c, std::uint64_t k) { return c_b(build_PR(c), k); }

FixedCounts c_b_oracle(const RamificationConfig& c, std::uint64_t k, std::size_t point_bound) {
    const GeomPointTable tab = geometric_points(c);
    const std::size_t n = tab.points.size();
    if (n > point_bound) throw ResourceError("c_b_oracle: too many geometric points");

    // Label transport for frob: the label at x_j after applying frob is the
    // label at x_{j+1} mapped through the place's eigenvalue bookkeeping.
    // Regular/scalar/unipotent labels are stable (q^d fixes each eigenvalue);
    // cuspidal labels swap on every step except the wrap-around step of an
    // even-degree place.
    std::vector<bool> flips(n, false);
    for (std::size_t x = 0; x < n; ++x) {
        const auto& pt = tab.points[x];
        const auto& v = c.places[pt.place];
        if (v.type != PlaceType::C) continue;
        const bool wrap = pt.j + 1 == v.degree;
        flips[x] = wrap ? (v.degree % 2 == 1) : true;
    }
    auto value = [&](std::size_t x, unsigned label) { return label == 0 ? tab.points[x].e1 : tab.points[x].e2; };
    auto frob = [&](const std::vector<unsigned>& idx) {
        std::vector<unsigned> out(n);
        for (std::size_t x = 0; x < n; ++x) out[x] = idx[tab.points[x].next] ^ (flips[x] ? 1u : 0u);
        return out;
    };
    auto realize = [&](const std::vector<unsigned>& idx) {
        std::vector<RationalMod1> out;
        for (std::size_t x = 0; x < n; ++x) out.push_back(value(x, idx[x]));
        return out;
    };

    std::set<std::vector<RationalMod1>> fixed, twisted;
    std::vector<unsigned> idx(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::size_t x = 0; x < n; ++x) idx[x] = (mask >> x) & 1u;
        const auto val = realize(idx);
        RationalMod1 sum;
        for (const auto& e : val) sum = sum + e;
        if (!(sum == RationalMod1())) continue;
        std::vector<unsigned> img = idx;
        for (std::uint64_t i = 0; i < k; ++i) img = frob(img);
        const auto img_val = realize(img);
        std::vector<unsigned> swapped = idx;
        for (auto& l : swapped) l ^= 1u;
        if (img_val == val) fixed.insert(val);
        if (img_val == realize(swapped)) twisted.insert(val);
    }
    return {Integer(static_cast<unsigned long>(fixed.size())), Integer(static_cast<unsigned long>(twisted.size()))};
}

std::uint64_t pr_period(const RamificationConfig& c) {
    std::uint64_t l = 1;
    for (const auto& v : c.places) l = lcm_u64(l, v.type == PlaceType::C ? 2 * v.degree : v.degree);
    return l;
}

// ------------------------------------------------------------ base change

RamificationConfig base_change(const RamificationConfig& c, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("base_change: k must be positive");
    RamificationConfig out{ipow(c.q, k), {}};
    const Integer& Q = out.q;
    for (const auto& v : c.places) {
        const std::uint64_t g = gcd_u64(v.degree, k);
        const std::uint64_t nd = v.degree / g;
        const Integer qd = ipow(c.q, v.degree);
        // Orbit representatives x_0, ..., x_{g-1} of frob^k on the d-cycle.
        for (std::uint64_t r = 0; r < g; ++r) {
            const Integer shift = ipow(c.q, r * (v.degree - 1));
            PlaceDatum w{nd, v.type, {}};
            for (const auto& e : v.exps) w.exps.push_back(e * shift);
            if (v.type == PlaceType::C && w.exps[0] * ipow(Q, nd) == w.exps[0]) {
                w.type = PlaceType::R;
                w.exps.push_back(w.exps[0] * qd);
            }
            out.places.push_back(std::move(w));
        }
    }
    auto viol = validate_config(out);
    if (!viol.empty()) throw InvariantError("base_change produced an invalid config: " + viol.front().message);
    return out;
}

}  // namespace tamecount
