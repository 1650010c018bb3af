#include "tamecount/counting.hpp"

#include <array>
#include <functional>
#include <sstream>

#include "tamecount/errors.hpp"

namespace tamecount {

namespace {

Integer sign_pow(std::uint64_t e) { return e % 2 == 0 ? Integer(1) : Integer(-1); }

// 2^e for possibly negative e.
Rational two_pow(std::int64_t e) {
    if (e >= 0) return Rational(ipow(2, static_cast<std::uint64_t>(e)));
    return Rational(Integer(1), ipow(2, static_cast<std::uint64_t>(-e)));
}

Rational half(const Rational& x) { return x / 2; }

}  // namespace

const char* case_label(ClosedFormCase c) {
    switch (c) {
        case ClosedFormCase::I: return "i";
        case ClosedFormCase::II: return "ii";
        case ClosedFormCase::III: return "iii";
        case ClosedFormCase::IV: return "iv";
        case ClosedFormCase::V: return "v";
        case ClosedFormCase::VI: return "vi";
    }
    return "?";
}

ClosedFormCase classify_case(const RamificationConfig& c) {
    const bool cr = has_type(c, {PlaceType::C, PlaceType::R});
    const bool u = has_type(c, {PlaceType::U});
    const bool odd_c = degree_sum(c, {PlaceType::C}) % 2 == 1;
    if (!cr) return u ? ClosedFormCase::II : ClosedFormCase::I;
    if (!u) return odd_c ? ClosedFormCase::IV : ClosedFormCase::III;
    return odd_c ? ClosedFormCase::VI : ClosedFormCase::V;
}

const char* convention_name(ExplicitConvention c) {
    return c == ExplicitConvention::Intro ? "intro" : "geom-theorem";
}

std::string source_convention(const HiggsSource& h) {
    if (const auto* p = std::get_if<P1Auto>(&h)) return std::string("p1-auto:") + convention_name(p->convention);
    return std::string("explicit:") + convention_name(std::get<ExplicitHiggs>(h).convention);
}

// ---------------------------------------------------------------- Evaluator

Evaluator::Evaluator(CurveSpec curve, RamificationConfig config, std::size_t point_bound)
    : curve_(std::move(curve)), config_(std::move(config)) {
    auto cv = curve_violations(curve_);
    if (!cv.empty()) throw ValidationError(cv.front(), "curve");
    require_valid(config_);
    if (curve_.q != config_.q)
        throw ValidationError("curve is over F_" + curve_.q.get_str() + " but places are over F_" + config_.q.get_str(),
                              "q");
    std::map<std::uint64_t, unsigned long> per_degree;
    for (const auto& v : config_.places) ++per_degree[v.degree];
    for (const auto& [d, n] : per_degree)
        if (d > 64 || closed_point_count(curve_, d) < n)
            throw ValidationError("the curve has fewer than " + std::to_string(n) + " closed points of degree " +
                                      std::to_string(d),
                                  "places");
    pr_ = build_PR(config_, point_bound);
}

ErrResult Evaluator::closed_form_err(std::uint64_t k) const {
    const ClosedFormCase kase = classify_case(config_);
    const FixedCounts cb = counts(k);
    const Rational c(cb.c), b(cb.b);
    const Integer p = pic(curve_, k);
    const Rational P(p), P2(pic_sym2(curve_, k));
    const Rational g(static_cast<unsigned long>(curve_.genus));
    const std::uint64_t cr_bar = degree_sum(config_, {PlaceType::C, PlaceType::R});
    const std::uint64_t u_bar = degree_sum(config_, {PlaceType::U});
    const Rational su_sign(sign_pow(u_bar));

    Rational err;
    if (kase == ClosedFormCase::I) {
        err = c * (P * P * (g - 1) + P);
    } else if (kase == ClosedFormCase::II) {
        const DegreeMultiset su = degree_multiset(config_, PlaceType::U);
        err = c * (Rational(beta(su, k)) * -su_sign * P2 + Rational(gamma(su, k)) * P + omega(su, k) * P * P);
    } else if (kase == ClosedFormCase::III) {
        err = half(c * (2 * g - 2 + Rational(cr_bar))) * P * P;
    } else if (kase == ClosedFormCase::IV) {
        err = (half(c * (2 * g - 1 + Rational(cr_bar))) - half(c + b)) * P * P + b * P2;
    } else {
        const DegreeMultiset su = degree_multiset(config_, PlaceType::U);
        const Rational a(alpha(su, k)), be(beta(su, k));
        if (kase == ClosedFormCase::V)
            err = (half(c * a) + su_sign * half(b * be)) * P * P - su_sign * b * be * P2;
        else
            err = (half(c * a) - su_sign * half(b * be)) * P * P + su_sign * b * be * P2;
    }
    return {err, case_label(kase)};
}

ErrResult Evaluator::spectral_err(std::uint64_t k) const {
    // Apply the per-case trace-formula corrections to the curve over F_{q^k}.
    const RamificationConfig bc = base_change(config_, k);
    const FixedCounts cb = counts(k);
    const Rational c(cb.c), b(cb.b);
    const Rational P1(pic(curve_, k)), P2(pic(curve_, 2 * k));
    const Rational g(static_cast<unsigned long>(curve_.genus));

    const bool sc = has_type(bc, {PlaceType::C});
    const bool sr = has_type(bc, {PlaceType::R});
    const std::size_t nu = place_count(bc, {PlaceType::U});
    const std::uint64_t deg_c = degree_sum(bc, {PlaceType::C});
    const std::uint64_t deg_r = degree_sum(bc, {PlaceType::R});
    bool u_even = false;
    std::uint64_t single_u_degree = 0;
    for (const auto& v : bc.places)
        if (v.type == PlaceType::U) {
            u_even = u_even || v.degree % 2 == 0;
            single_u_degree = v.degree;
        }
    const Rational nu_sign(sign_pow(nu));
    const Rational pow2 = two_pow(static_cast<std::int64_t>(nu) - 2);
    const Rational d(static_cast<unsigned long>(single_u_degree));

    struct Case {
        bool applies;
        std::function<Rational()> value;
    };
    const std::array<Case, 13> cases{{
        {sc && u_even, []() -> Rational { return 0; }},
        {sc && !u_even && nu > 0, [&]() -> Rational { return -nu_sign * b * pow2 * Rational(sign_pow(deg_c)) * P2; }},
        {sc && nu == 0, [&]() -> Rational { return b / 4 * (1 - Rational(sign_pow(deg_c))) * P2; }},
        {!sc && sr && nu == 0, [&]() -> Rational { return half(c * P1 * P1 * (2 * g - 2 + Rational(deg_r))); }},
        {!sc && !sr && nu == 0, [&]() -> Rational { return c * P1 * P1 * (g - 1) + c * P1; }},
        {!sc && !sr && nu == 1 && u_even, [&]() -> Rational { return -c * P1 + d / 2 * c * P1 * P1; }},
        {!sc && !sr && nu == 1 && !u_even, [&]() -> Rational { return c / 2 * P2 - c * P1 + c * d / 2 * P1 * P1; }},
        {!sc && !sr && nu >= 2 && u_even, [&]() -> Rational { return c * nu_sign * P1; }},
        {!sc && !sr && nu >= 2 && !u_even, [&]() -> Rational { return c * nu_sign * P1 - c * nu_sign * pow2 * P2; }},
        {!sc && sr && nu == 1 && u_even, [&]() -> Rational { return half(c * P1 * P1 * d); }},
        {!sc && sr && nu == 1 && !u_even, [&]() -> Rational { return half(c * P1 * P1 * d) + b / 2 * P2; }},
        {!sc && sr && nu >= 2 && u_even, []() -> Rational { return 0; }},
        {!sc && sr && nu >= 2 && !u_even, [&]() -> Rational { return -nu_sign * b * pow2 * P2; }},
    }};
    int hit = -1;
    for (int i = 0; i < 13; ++i) {
        if (!cases[i].applies) continue;
        if (hit >= 0)
            throw InvariantError("spectral_err: cases " + std::to_string(hit + 1) + " and " + std::to_string(i + 1) +
                                 " both apply");
        hit = i;
    }
    if (hit < 0) throw InvariantError("spectral_err: no case applies");
    return {cases[hit].value(), std::to_string(hit + 1)};
}

Integer Evaluator::higg(const HiggsSource& h, std::uint64_t k) const {
    if (const auto* p = std::get_if<P1Auto>(&h)) {
        if (curve_.genus != 0) throw ValidationError("p1-auto Higgs mode requires genus 0", "higgs.mode");
        return higg_p1(config_, k, p->convention, p->e);
    }
    const auto& ex = std::get<ExplicitHiggs>(h);
    auto it = ex.values.find(k);
    if (it == ex.values.end())
        throw ValidationError("no explicit Higgs value for k = " + std::to_string(k), "higgs.values");
    return it->second;
}

CountRow Evaluator::count(const HiggsSource& h, std::uint64_t k) const {
    CountRow row;
    row.k = k;
    const FixedCounts cb = counts(k);
    row.c_k = cb.c;
    row.b_k = cb.b;
    row.pic_k = pic(curve_, k);
    row.pic_2k = pic(curve_, 2 * k);
    const ErrResult t1 = closed_form_err(k);
    row.err = t1.value;
    row.case_label = t1.label;
    row.spectral_case = spectral_err(k).label;
    row.convention = source_convention(h);
    row.higg = higg(h, k);
    if (!product_condition(config_)) {
        row.E2 = 0;
        row.warning = "product condition fails; no local systems";
        return row;
    }
    const Rational e2 = Rational(row.higg) - row.err;
    if (e2.get_den() != 1 || e2 < 0) {
        std::ostringstream os;
        os << "count_E2: E2 = " << e2.get_str() << " is not a nonnegative integer at k=" << k << " (higg=" << row.higg.get_str()
           << ", err=" << row.err.get_str() << ", case=" << row.case_label << ", c=" << row.c_k.get_str()
           << ", b=" << row.b_k.get_str() << ", pic_k=" << row.pic_k.get_str() << ", pic_2k=" << row.pic_2k.get_str()
           << ", convention=" << row.convention << ")";
        throw InvariantError(os.str());
    }
    row.E2 = e2.get_num();
    return row;
}

CrossRow Evaluator::cross(std::uint64_t k) const {
    CrossRow r{k, closed_form_err(k), spectral_err(k), false};
    r.equal = r.closed_form.value == r.spectral.value;
    return r;
}

ErrResult closed_form_err(const CurveSpec& curve, const RamificationConfig& c, std::uint64_t k) {
    return Evaluator(curve, c).closed_form_err(k);
}

ErrResult spectral_err(const CurveSpec& curve, const RamificationConfig& c, std::uint64_t k) {
    return Evaluator(curve, c).spectral_err(k);
}

CountRow count_E2(const CurveSpec& curve, const RamificationConfig& c, const HiggsSource& h, std::uint64_t k) {
    return Evaluator(curve, c).count(h, k);
}

std::vector<CrossRow> crosscheck(const CurveSpec& curve, const RamificationConfig& c, std::uint64_t k_first,
                                 std::uint64_t k_last) {
    Evaluator ev(curve, c);
    std::vector<CrossRow> out;
    for (std::uint64_t k = k_first; k <= k_last; ++k) out.push_back(ev.cross(k));
    return out;
}

// -------------------------------------------------------------------- audit

std::vector<std::pair<std::string, PeriodicFn>> periodic_ingredients(const RamificationConfig& c, const PRState& pr) {
    std::vector<std::pair<std::string, PeriodicFn>> out;
    const std::uint64_t n_pr = pr_period(c);
    auto cval = [&](std::uint64_t k) -> Rational { return Rational(c_b(pr, k).c); };
    auto bval = [&](std::uint64_t k) -> Rational { return Rational(c_b(pr, k).b); };
    out.emplace_back("c", PeriodicFn::sample(n_pr, cval));
    out.emplace_back("b", PeriodicFn::sample(n_pr, bval));

    // The halved combinations rely on the swap pairing, which needs the
    // product condition.
    const bool cr = has_type(c, {PlaceType::C, PlaceType::R}) && product_condition(c);
    if (cr) out.emplace_back("(c+b)/2", PeriodicFn::sample(n_pr, [&](std::uint64_t k) -> Rational { return (cval(k) + bval(k)) / 2; }));
    if (product_condition(c) && degree_sum(c, {PlaceType::R}) % 2 == 1)
        out.emplace_back("c/2", PeriodicFn::sample(n_pr, [&](std::uint64_t k) -> Rational { return cval(k) / 2; }));

    const DegreeMultiset su = degree_multiset(c, PlaceType::U);
    if (su.degrees.empty()) return out;
    const std::uint64_t n_orb = orbit_fn_period(su);
    out.emplace_back("alpha", PeriodicFn::sample(n_orb, [&](std::uint64_t k) -> Rational { return Rational(alpha(su, k)); }));
    out.emplace_back("beta", PeriodicFn::sample(n_orb, [&](std::uint64_t k) -> Rational { return Rational(beta(su, k)); }));
    out.emplace_back("gamma", PeriodicFn::sample(n_orb, [&](std::uint64_t k) -> Rational { return Rational(gamma(su, k)); }));
    out.emplace_back("omega", PeriodicFn::sample(n_orb, [&](std::uint64_t k) -> Rational { return omega(su, k); }));
    if (cr) {
        const std::uint64_t n = lcm_u64(n_pr, n_orb);
        out.emplace_back("c*alpha/2+b*beta/2", PeriodicFn::sample(n, [&](std::uint64_t k) -> Rational {
                             return (cval(k) * Rational(alpha(su, k)) + bval(k) * Rational(beta(su, k))) / 2;
                         }));
        out.emplace_back("c*alpha/2-b*beta/2", PeriodicFn::sample(n, [&](std::uint64_t k) -> Rational {
                             return (cval(k) * Rational(alpha(su, k)) - bval(k) * Rational(beta(su, k))) / 2;
                         }));
    }
    return out;
}

bool AuditReport::ok() const {
    for (const auto& e : entries)
        if (!e.ok) return false;
    return true;
}

namespace {

// Coefficients (lowest first) of the interpolating polynomial through (x_i, y_i).
std::vector<Rational> interpolate(const std::vector<Integer>& xs, const std::vector<Integer>& ys) {
    const std::size_t n = xs.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        Integer p = 1;
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = Rational(p);
            p *= xs[i];
        }
        a[i][n] = Rational(ys[i]);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (a[piv][col] == 0) ++piv;  // nodes are distinct, so Vandermonde is invertible
        std::swap(a[piv], a[col]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            const Rational f = a[i][col] / a[col][col];
            for (std::size_t j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    std::vector<Rational> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i][n] / a[i][i];
    return out;
}

std::string poly_string(const std::vector<Rational>& c) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        os << (first ? "" : " + ") << c[i].get_str();
        if (i > 0) os << "*Q" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return first ? "0" : os.str();
}

}  // namespace

AuditReport lefschetz_audit(const CurveSpec& curve, const RamificationConfig& c, const P1Auto& h,
                            std::uint64_t horizon) {
    Evaluator ev(curve, c);
    AuditReport rep;
    for (auto& [name, fn] : periodic_ingredients(c, ev.pr())) {
        auto res = certify_periodic(fn);
        if (const auto* d = std::get_if<LefschetzDecomp>(&res))
            rep.entries.push_back({"certify " + name, true, "period " + std::to_string(d->period) + " " + d->to_string()});
        else
            rep.entries.push_back({"certify " + name, false, std::get<CertifyRejection>(res).to_string()});
    }

    std::map<std::uint64_t, Integer> e2;
    AuditEntry div{"pic | E2", true, "checked k = 1.." + std::to_string(horizon)};
    for (std::uint64_t k = 1; k <= horizon; ++k) {
        const CountRow row = ev.count(h, k);
        e2[k] = row.E2;
        if (div.ok && row.E2 % row.pic_k != 0) {
            div.ok = false;
            div.detail = "k=" + std::to_string(k) + ": pic=" + row.pic_k.get_str() + ", E2=" + row.E2.get_str();
        }
    }
    rep.entries.push_back(div);

    if (curve.genus == 0) {
        // The Higgs term and the error terms depend on k only through q^k and
        // the splitting pattern of the places, which is periodic in k.
        std::uint64_t period = pr_period(c);
        const DegreeMultiset su = degree_multiset(c, PlaceType::U);
        if (!su.degrees.empty()) period = lcm_u64(period, orbit_fn_period(su));
        const std::size_t k0 = std::max<std::size_t>(1, degree_sum(c, {PlaceType::R, PlaceType::U}));
        for (std::uint64_t r = 1; r <= std::min(period, horizon); ++r) {
            std::vector<Integer> xs, ys;
            std::vector<std::uint64_t> ks;
            for (std::uint64_t k = r; k <= horizon; k += period) ks.push_back(k);
            const std::size_t nfit = std::min(k0, ks.size());
            for (std::size_t i = 0; i < nfit; ++i) {
                xs.push_back(ipow(c.q, ks[i]));
                ys.push_back(e2[ks[i]]);
            }
            const auto coef = interpolate(xs, ys);
            bool ok = true;
            std::string detail = "k = " + std::to_string(r) + " mod " + std::to_string(period) + ": E2 = " + poly_string(coef);
            for (const auto& x : coef)
                if (x.get_den() != 1) ok = false;
            std::size_t verified = 0;
            for (std::size_t i = nfit; i < ks.size() && ok; ++i) {
                Rational v = 0, xp = 1;
                const Rational x(ipow(c.q, ks[i]));
                for (const auto& a : coef) {
                    v += a * xp;
                    xp *= x;
                }
                if (v != Rational(e2[ks[i]])) {
                    ok = false;
                    detail += "; fails at k=" + std::to_string(ks[i]);
                }
                ++verified;
            }
            detail += "; verified at " + std::to_string(verified) + " further k";
            rep.entries.push_back({"integer polynomial fit", ok, detail});
        }
    }
    return rep;
}

}  // namespace tamecount
