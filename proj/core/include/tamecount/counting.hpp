#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tamecount/curve.hpp"
#include "tamecount/higgs_p1.hpp"
#include "tamecount/lefschetz.hpp"
#include "tamecount/ramification.hpp"

namespace tamecount {

// Cases of the closed formula, by which of S_cr, S_u are empty and the
// parity of the total cuspidal degree.
enum class ClosedFormCase { I, II, III, IV, V, VI };
const char* case_label(ClosedFormCase c);
ClosedFormCase classify_case(const RamificationConfig& c);

// Higgs term computed on P^1 from the ramification data.
struct P1Auto {
    HiggConvention convention = HiggConvention::Geom;
    std::int64_t e = 1;
};

// Higgs term supplied by the user, tagged with the normalization it was
// computed under.
enum class ExplicitConvention { Intro, GeomTheorem };
const char* convention_name(ExplicitConvention c);
struct ExplicitHiggs {
    ExplicitConvention convention = ExplicitConvention::GeomTheorem;
    std::map<std::uint64_t, Integer> values;
};

using HiggsSource = std::variant<P1Auto, ExplicitHiggs>;
std::string source_convention(const HiggsSource& h);

struct ErrResult {
    Rational value;
    std::string label;  // "i".."vi" or "1".."13"
};

struct CountRow {
    std::uint64_t k = 0;
    Integer E2, higg;
    Rational err;
    Integer pic_k, pic_2k, c_k, b_k;
    std::string case_label, spectral_case, convention, warning;
};

struct CrossRow {
    std::uint64_t k = 0;
    ErrResult closed_form, spectral;
    bool equal = false;
};

// Evaluates everything for one (curve, ramification) pair. Construction
// validates the inputs and enumerates P_R once; all queries are const and
// may run concurrently.
class Evaluator {
public:
    Evaluator(CurveSpec curve, RamificationConfig config, std::size_t point_bound = kDefaultPointBound);

    const CurveSpec& curve() const { return curve_; }
    const RamificationConfig& config() const { return config_; }
    const PRState& pr() const { return pr_; }

    FixedCounts counts(std::uint64_t k) const { return c_b(pr_, k); }
    ErrResult closed_form_err(std::uint64_t k) const;
    ErrResult spectral_err(std::uint64_t k) const;
    Integer higg(const HiggsSource& h, std::uint64_t k) const;
    CountRow count(const HiggsSource& h, std::uint64_t k) const;
    CrossRow cross(std::uint64_t k) const;

private:
    CurveSpec curve_;
    RamificationConfig config_;
    PRState pr_;
};

ErrResult closed_form_err(const CurveSpec& curve, const RamificationConfig& c, std::uint64_t k);
ErrResult spectral_err(const CurveSpec& curve, const RamificationConfig& c, std::uint64_t k);
CountRow count_E2(const CurveSpec& curve, const RamificationConfig& c, const HiggsSource& h, std::uint64_t k);
std::vector<CrossRow> crosscheck(const CurveSpec& curve, const RamificationConfig& c, std::uint64_t k_first,
                                 std::uint64_t k_last);

// Every periodic ingredient of the error terms that applies to the config,
// sampled over a common period: c, b, the orbit functions of S_u, and the
// half-sum combinations when S_cr is nonempty.
std::vector<std::pair<std::string, PeriodicFn>> periodic_ingredients(const RamificationConfig& c, const PRState& pr);

struct AuditEntry {
    std::string check;
    bool ok = false;
    std::string detail;
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    bool ok() const;
};

// Certifies the periodic ingredients, fits E2 as an integer polynomial in
// q^k on each residue class of k (genus 0 only), and checks pic(k) | E2(k).
AuditReport lefschetz_audit(const CurveSpec& curve, const RamificationConfig& c, const P1Auto& h,
                            std::uint64_t horizon);

}  // namespace tamecount
