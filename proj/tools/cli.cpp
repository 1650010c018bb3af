#include "cli.hpp"

#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "tamecount/config.hpp"
#include "tamecount/counting.hpp"
#include "tamecount/errors.hpp"
#include "tamecount/finite_field.hpp"
#include "tamecount/higgs_p1.hpp"

namespace tamecount::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kMaxSpan = 64;

struct KRange {
    std::uint64_t first = 1, last = 1;
};

KRange parse_k_range(const std::string& text) {
    auto num = [&](const std::string& s) -> std::uint64_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9)
            throw ValidationError("expected a positive integer or a range A..B, got \"" + text + "\"", "--k");
        return std::stoull(s);
    };
    KRange r;
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        r.first = r.last = num(text);
    } else {
        r.first = num(text.substr(0, dots));
        r.last = num(text.substr(dots + 2));
    }
    if (r.first < 1 || r.last < r.first) throw ValidationError("range must satisfy 1 <= A <= B", "--k");
    if (r.last - r.first > kMaxSpan)
        throw ValidationError("range spans more than " + std::to_string(kMaxSpan) + " values", "--k");
    return r;
}

// A table printed either as TSV with a header or as a JSON array of objects
// whose values are all strings.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void print(std::ostream& out, const std::string& format) const {
        if (format == "json") {
            json arr = json::array();
            for (const auto& r : rows) {
                json o = json::object();
                for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
                arr.push_back(std::move(o));
            }
            out << arr.dump(2) << "\n";
            return;
        }
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "\t" : "") << cells[i];
            out << "\n";
        };
        line(columns);
        for (const auto& r : rows) line(r);
    }
};

// Evaluates fn for every k in the range on up to `threads` workers and
// returns the results ordered by k. The first failure in k order is rethrown.
template <class T>
std::vector<T> per_k(const KRange& r, unsigned threads, const std::function<T(std::uint64_t)>& fn) {
    const std::size_t n = r.last - r.first + 1;
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    auto work = [&](std::size_t start, std::size_t stride) {
        for (std::size_t i = start; i < n; i += stride) {
            try {
                out[i] = fn(r.first + i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<std::string> row_cells(const CountRow& r) {
    return {std::to_string(r.k), r.E2.get_str(), r.higg.get_str(), r.err.get_str(), r.pic_k.get_str(),
            r.pic_2k.get_str(), r.c_k.get_str(), r.b_k.get_str(), r.case_label, r.spectral_case, r.convention, r.warning};
}

Evaluator make_evaluator(const ConfigDocument& doc) { return Evaluator(doc.curve, doc.ramification); }

// Marked points of the genus-0 Higgs problem over F_{q^k}: the regular and
// unipotent places after base change.
GrConfig marked_over(const ConfigDocument& doc, std::uint64_t k, LinePolicy policy, bool require_u) {
    const RamificationConfig bc = base_change(doc.ramification, k);
    if (has_type(bc, {PlaceType::C}))
        throw UnsupportedError("cuspidal places remain over F_{q^" + std::to_string(k) + "}");
    std::int64_t e = 1;
    if (const auto* p = std::get_if<P1Auto>(&doc.higgs)) e = p->e;
    GrConfig g{bc.q, e, {}, policy};
    for (const auto& v : bc.places) {
        if (v.type == PlaceType::R) g.marked.push_back({v.degree, false, std::nullopt});
        if (v.type == PlaceType::U) g.marked.push_back({v.degree, require_u, std::nullopt});
    }
    return g;
}

std::string join(const std::vector<Integer>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s;
}

struct Options {
    std::string config, k = "1..12", format = "tsv", policy, oracle_kind;
    unsigned threads = 1;
    bool require_nonzero = false;
    std::uint64_t horizon = 0;
    std::string q, point_counts;
    unsigned genus = 0;
};

int cmd_count(const Options& o, std::ostream& out) {
    const ConfigDocument doc = load_config(o.config);
    const Evaluator ev = make_evaluator(doc);
    const auto rows = per_k<CountRow>(parse_k_range(o.k), o.threads, [&](std::uint64_t k) { return ev.count(doc.higgs, k); });
    Table t{{"k", "E2", "higg", "err", "pic_k", "pic_2k", "c_k", "b_k", "case", "spectral_case", "convention", "warning"}, {}};
    for (const auto& r : rows) t.rows.push_back(row_cells(r));
    t.print(out, o.format);
    return 0;
}

int cmd_certify(const Options& o, std::ostream& out) {
    const ConfigDocument doc = load_config(o.config);
    const Evaluator ev = make_evaluator(doc);
    Table t{{"check", "status", "detail"}, {}};
    bool ok = true;
    for (const auto& [name, fn] : periodic_ingredients(doc.ramification, ev.pr())) {
        const auto res = certify_periodic(fn);
        if (const auto* d = std::get_if<LefschetzDecomp>(&res)) {
            t.rows.push_back({name, "certified", "period " + std::to_string(d->period) + " " + d->to_string()});
        } else {
            ok = false;
            t.rows.push_back({name, "rejected", std::get<CertifyRejection>(res).to_string()});
        }
    }
    if (o.horizon > 0) {
        const auto* auto_src = std::get_if<P1Auto>(&doc.higgs);
        if (!auto_src) throw ValidationError("the audit needs p1-auto Higgs counts", "higgs.mode");
        for (const auto& e : lefschetz_audit(doc.curve, doc.ramification, *auto_src, o.horizon).entries) {
            ok = ok && e.ok;
            t.rows.push_back({e.check, e.ok ? "ok" : "failed", e.detail});
        }
    }
    t.print(out, o.format);
    return ok ? 0 : 2;
}

int cmd_higgs(const Options& o, std::ostream& out) {
    const ConfigDocument doc = load_config(o.config);
    const KRange r = parse_k_range(o.k);
    const bool direct = !o.policy.empty() || o.require_nonzero;
    LinePolicy policy = LinePolicy::Free;
    if (o.policy == "forced") policy = LinePolicy::Forced;
    Table t{{"k", "Q", "value", "source"}, {}};
    if (direct) {
        if (doc.curve.genus != 0) throw ValidationError("direct Higgs counts need genus 0", "genus");
        const std::string src = std::string("grcount:") + (policy == LinePolicy::Free ? "free" : "forced") +
                                (o.require_nonzero ? ":require-nonzero" : "");
        const auto vals = per_k<Integer>(r, o.threads, [&](std::uint64_t k) { return grcount(marked_over(doc, k, policy, o.require_nonzero)); });
        for (std::uint64_t k = r.first; k <= r.last; ++k)
            t.rows.push_back({std::to_string(k), ipow(doc.curve.q, k).get_str(), vals[k - r.first].get_str(), src});
    } else {
        const Evaluator ev = make_evaluator(doc);
        const auto vals = per_k<Integer>(r, o.threads, [&](std::uint64_t k) { return ev.higg(doc.higgs, k); });
        for (std::uint64_t k = r.first; k <= r.last; ++k)
            t.rows.push_back({std::to_string(k), ipow(doc.curve.q, k).get_str(), vals[k - r.first].get_str(),
                              source_convention(doc.higgs)});
    }
    t.print(out, o.format);
    return 0;
}

int cmd_crosscheck(const Options& o, std::ostream& out) {
    const ConfigDocument doc = load_config(o.config);
    const Evaluator ev = make_evaluator(doc);
    const auto rows = per_k<CrossRow>(parse_k_range(o.k), o.threads, [&](std::uint64_t k) { return ev.cross(k); });
    Table t{{"k", "closed_form_err", "case", "spectral_err", "spectral_case", "result"}, {}};
    bool ok = true;
    for (const auto& r : rows) {
        ok = ok && r.equal;
        t.rows.push_back({std::to_string(r.k), r.closed_form.value.get_str(), r.closed_form.label, r.spectral.value.get_str(),
                          r.spectral.label, r.equal ? "PASS" : "FAIL"});
    }
    t.print(out, o.format);
    return ok ? 0 : 2;
}

int cmd_oracle(const Options& o, std::ostream& out) {
    const ConfigDocument doc = load_config(o.config);
    const KRange r = parse_k_range(o.k);
    bool ok = true;
    Table t;
    if (o.oracle_kind == "pr") {
        const Evaluator ev = make_evaluator(doc);
        t.columns = {"k", "c", "b", "c_oracle", "b_oracle", "result"};
        const auto rows = per_k<std::pair<FixedCounts, FixedCounts>>(r, o.threads, [&](std::uint64_t k) {
            return std::make_pair(ev.counts(k), c_b_oracle(doc.ramification, k));
        });
        for (std::uint64_t k = r.first; k <= r.last; ++k) {
            const auto& [p, q] = rows[k - r.first];
            ok = ok && p == q;
            t.rows.push_back({std::to_string(k), p.c.get_str(), p.b.get_str(), q.c.get_str(), q.b.get_str(),
                              p == q ? "PASS" : "FAIL"});
        }
    } else {
        if (doc.curve.genus != 0) throw ValidationError("the Higgs oracle needs genus 0", "genus");
        const LinePolicy policy = o.policy == "forced" ? LinePolicy::Forced : LinePolicy::Free;
        t.columns = {"k", "Q", "grcount", "oracle", "result"};
        const auto rows = per_k<std::pair<Integer, Integer>>(r, o.threads, [&](std::uint64_t k) {
            GrConfig g = marked_over(doc, k, policy, o.require_nonzero);
            if (g.Q > 65536) throw ResourceError("field of size " + g.Q.get_str() + " is too large for the oracle");
            const FiniteField f = [&] {
                const auto pm = prime_power(g.Q);
                return FiniteField(finite_field_make(pm->first, pm->second));
            }();
            std::vector<std::uint64_t> degs;
            for (const auto& m : g.marked) degs.push_back(m.degree);
            const auto pts = distinct_closed_points(f, degs);
            for (std::size_t i = 0; i < pts.size(); ++i) g.marked[i].point = pts[i];
            return std::make_pair(grcount(g), grcount_oracle(f, g));
        });
        for (std::uint64_t k = r.first; k <= r.last; ++k) {
            const auto& [a, b] = rows[k - r.first];
            ok = ok && a == b;
            t.rows.push_back({std::to_string(k), ipow(doc.curve.q, k).get_str(), a.get_str(), b.get_str(),
                              a == b ? "PASS" : "FAIL"});
        }
    }
    t.print(out, o.format);
    return ok ? 0 : 2;
}

int cmd_zeta(const Options& o, std::ostream& out) {
    Integer q;
    if (o.q.empty() || q.set_str(o.q, 10) != 0) throw ValidationError("expected an integer", "--q");
    std::vector<Integer> counts;
    std::stringstream ss(o.point_counts);
    for (std::string item; std::getline(ss, item, ',');) {
        Integer v;
        if (item.empty() || v.set_str(item, 10) != 0) throw ValidationError("bad entry \"" + item + "\"", "--point-counts");
        counts.push_back(v);
    }
    const CurveSpec c = o.genus == 0 ? genus0_curve(q) : zeta_from_point_counts(q, o.genus, counts);
    if (o.genus == 0 && !counts.empty()) throw ValidationError("genus 0 takes no point counts", "--point-counts");
    std::vector<Integer> coeffs;
    for (long i = 0; i <= c.numerator.degree(); ++i) coeffs.push_back(c.numerator.coeff(static_cast<std::size_t>(i)));
    Table t{{"q", "genus", "numerator", "polynomial", "pic_1"}, {}};
    t.rows.push_back({q.get_str(), std::to_string(o.genus), join(coeffs), c.numerator.to_string('z'), pic(c, 1).get_str()});
    t.print(out, o.format);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Counts tame rank-2 local systems on curves over finite fields."};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* sub, bool needs_k) {
        sub->add_option("--config", o.config, "JSON document")->required();
        if (needs_k) sub->add_option("--k", o.k, "k or inclusive range A..B")->capture_default_str();
        sub->add_option("--format", o.format)->check(CLI::IsMember({"tsv", "json"}))->capture_default_str();
        sub->add_option("--threads", o.threads, "worker threads for per-k work")->check(CLI::Range(1u, 256u));
    };
    auto* count = app.add_subcommand("count", "E2 and its ingredients for each k");
    add_common(count, true);
    auto* certify = app.add_subcommand("certify", "Lefschetz decompositions of the periodic ingredients");
    add_common(certify, false);
    certify->add_option("--horizon", o.horizon, "also audit E2 for k up to this bound (genus 0, p1-auto)");
    auto* higgs = app.add_subcommand("higgs", "Higgs counts");
    add_common(higgs, true);
    higgs->add_option("--policy", o.policy, "count marked points directly with this line policy")
        ->check(CLI::IsMember({"free", "forced"}));
    higgs->add_flag("--require-nonzero", o.require_nonzero, "require the Higgs field nonzero at unipotent places");
    auto* cross = app.add_subcommand("crosscheck", "compare the two error formulas");
    add_common(cross, true);
    auto* oracle = app.add_subcommand("oracle", "compare against brute-force enumeration");
    oracle->add_option("kind", o.oracle_kind)->required()->check(CLI::IsMember({"pr", "gr"}));
    add_common(oracle, true);
    oracle->add_option("--policy", o.policy)->check(CLI::IsMember({"free", "forced"}));
    oracle->add_flag("--require-nonzero", o.require_nonzero);
    auto* zeta = app.add_subcommand("zeta", "zeta numerator from point counts");
    zeta->add_option("--q", o.q)->required();
    zeta->add_option("--g", o.genus)->required()->check(CLI::Range(0u, 64u));
    zeta->add_option("--point-counts", o.point_counts, "N_1,...,N_g");
    zeta->add_option("--format", o.format)->check(CLI::IsMember({"tsv", "json"}));

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    auto report = [&](const char* kind, const char* what) { err << kind << ": " << what << "\n"; };
    try {
        if (*count) return cmd_count(o, out);
        if (*certify) return cmd_certify(o, out);
        if (*higgs) return cmd_higgs(o, out);
        if (*cross) return cmd_crosscheck(o, out);
        if (*oracle) return cmd_oracle(o, out);
        if (*zeta) return cmd_zeta(o, out);
    } catch (const ValidationError& e) {
        report("invalid input", e.what());
        return 1;
    } catch (const UnsupportedError& e) {
        report("unsupported", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        report("invalid input", e.what());
        return 1;
    } catch (const InvariantError& e) {
        report("internal check failed", e.what());
        return 2;
    } catch (const ResourceError& e) {
        report("resource bound", e.what());
        return 3;
    } catch (const std::exception& e) {
        report("internal error", e.what());
        return 2;
    }
    return 1;
}

}  // namespace tamecount::cli
