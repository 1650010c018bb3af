#include "tamecount/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tamecount/errors.hpp"

namespace tamecount {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ValidationError(msg, path); }

void reject_unknown(const json& obj, const std::string& path, std::set<std::string> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
}

// Integers may be JSON numbers or decimal strings (for values beyond 64 bits).
Integer read_integer(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) {
        Integer v;
        const auto s = j.get<std::string>();
        if (s.empty() || v.set_str(s, 10) != 0) fail(path, "expected a decimal integer, got \"" + s + "\"");
        return v;
    }
    fail(path, "expected an integer");
}

std::uint64_t read_small(const json& j, const std::string& path, std::uint64_t lo, std::uint64_t hi) {
    const Integer v = read_integer(j, path);
    if (v < lo || v > hi) fail(path, "value " + v.get_str() + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v.get_ui();
}

std::vector<Integer> read_int_list(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of integers");
    std::vector<Integer> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_integer(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

CurveSpec read_curve(const json& doc, const Integer& q) {
    const unsigned g = doc.contains("genus") ? static_cast<unsigned>(read_small(doc["genus"], "genus", 0, 64)) : 0;
    const bool has_num = doc.contains("zeta_numerator");
    const bool has_pts = doc.contains("point_counts");
    if (g == 0) {
        if (has_pts) fail("point_counts", "point counts are not used for genus 0");
        if (has_num && read_int_list(doc["zeta_numerator"], "zeta_numerator") != std::vector<Integer>{1})
            fail("zeta_numerator", "genus 0 requires the numerator [1]");
        return genus0_curve(q);
    }
    if (!has_num && !has_pts) fail("zeta_numerator", "genus >= 1 needs zeta_numerator or point_counts");
    std::optional<CurveSpec> from_num, from_pts;
    if (has_num) {
        try {
            from_num = make_curve(q, g, IntPoly(read_int_list(doc["zeta_numerator"], "zeta_numerator")));
        } catch (const ValidationError& e) {
            if (!e.where().empty()) throw;
            fail("zeta_numerator", e.what());
        }
    }
    if (has_pts) {
        try {
            from_pts = zeta_from_point_counts(q, g, read_int_list(doc["point_counts"], "point_counts"));
        } catch (const ValidationError& e) {
            if (!e.where().empty()) throw;
            fail("point_counts", e.what());
        }
    }
    if (from_num && from_pts && !(from_num->numerator == from_pts->numerator))
        fail("point_counts", "point counts give numerator " + from_pts->numerator.to_string('z') +
                                 ", which disagrees with zeta_numerator " + from_num->numerator.to_string('z'));
    return from_num ? *from_num : *from_pts;
}

RamificationConfig read_places(const json& doc, const Integer& q) {
    RamificationConfig rc{q, {}};
    if (!doc.contains("places")) return rc;
    const json& places = doc["places"];
    if (!places.is_array()) fail("places", "expected an array");
    for (std::size_t i = 0; i < places.size(); ++i) {
        const std::string path = "places[" + std::to_string(i) + "]";
        const json& p = places[i];
        if (!p.is_object()) fail(path, "expected an object");
        reject_unknown(p, path, {"degree", "type", "eig"});
        if (!p.contains("degree")) fail(path + ".degree", "missing");
        if (!p.contains("type")) fail(path + ".type", "missing");
        if (!p.contains("eig")) fail(path + ".eig", "missing");
        PlaceDatum v;
        v.degree = read_small(p["degree"], path + ".degree", 1, 64);
        if (!p["type"].is_string()) fail(path + ".type", "expected a string");
        try {
            v.type = parse_place_type(p["type"].get<std::string>());
        } catch (const std::invalid_argument& e) {
            fail(path + ".type", e.what());
        }
        const json& eig = p["eig"];
        if (!eig.is_array()) fail(path + ".eig", "expected an array of \"a/b\" strings");
        for (std::size_t j = 0; j < eig.size(); ++j) {
            const std::string ep = path + ".eig[" + std::to_string(j) + "]";
            if (!eig[j].is_string()) fail(ep, "exponents must be strings \"a/b\"");
            try {
                v.exps.push_back(RationalMod1::parse(eig[j].get<std::string>()));
            } catch (const std::invalid_argument& e) {
                fail(ep, e.what());
            }
        }
        rc.places.push_back(std::move(v));
    }
    for (const auto& viol : validate_config(rc)) {
        if (viol.place >= rc.places.size()) fail("q", viol.message);
        fail("places[" + std::to_string(viol.place) + "]", viol.message);
    }
    return rc;
}

// Without a higgs section, genus 0 computes the counts and higher genus has
// no values (count then reports the missing k).
HiggsSource read_higgs(const json& doc, HiggConvention coeff, unsigned genus) {
    if (!doc.contains("higgs")) {
        if (genus == 0) return P1Auto{coeff, 1};
        return ExplicitHiggs{};
    }
    const json& h = doc["higgs"];
    if (!h.is_object()) fail("higgs", "expected an object");
    reject_unknown(h, "higgs", {"mode", "convention", "values", "e"});
    if (!h.contains("mode") || !h["mode"].is_string()) fail("higgs.mode", "expected \"p1-auto\" or \"explicit\"");
    const std::string mode = h["mode"].get<std::string>();
    if (mode == "p1-auto") {
        if (h.contains("values")) fail("higgs.values", "values are only used in explicit mode");
        P1Auto a{coeff, 1};
        if (h.contains("e")) {
            const Integer e = read_integer(h["e"], "higgs.e");
            if (!e.fits_slong_p() || e % 2 == 0) fail("higgs.e", "bundle degree must be an odd integer");
            a.e = e.get_si();
        }
        return a;
    }
    if (mode != "explicit") fail("higgs.mode", "unknown mode \"" + mode + "\"");
    ExplicitHiggs ex;
    if (!h.contains("convention") || !h["convention"].is_string())
        fail("higgs.convention", "explicit mode requires a convention tag (\"intro\" or \"geom-theorem\")");
    const std::string conv = h["convention"].get<std::string>();
    if (conv == "intro")
        ex.convention = ExplicitConvention::Intro;
    else if (conv == "geom-theorem")
        ex.convention = ExplicitConvention::GeomTheorem;
    else
        fail("higgs.convention", "unknown convention \"" + conv + "\"");
    if (!h.contains("values") || !h["values"].is_object()) fail("higgs.values", "expected an object {k: value}");
    for (auto it = h["values"].begin(); it != h["values"].end(); ++it) {
        const std::string path = "higgs.values." + it.key();
        Integer k;
        if (k.set_str(it.key(), 10) != 0 || k < 1 || !k.fits_ulong_p()) fail(path, "keys must be positive integers");
        ex.values[k.get_ui()] = read_integer(it.value(), path);
    }
    return ex;
}

}  // namespace

ConfigDocument parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail("$", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("$", "top level must be an object");
    reject_unknown(doc, "", {"q", "genus", "zeta_numerator", "point_counts", "places", "higgs", "conventions",
                             "name", "description"});
    if (!doc.contains("q")) fail("q", "missing");
    const Integer q = read_integer(doc["q"], "q");
    if (!is_prime_power(q)) fail("q", q.get_str() + " is not a prime power");

    HiggConvention coeff = HiggConvention::Geom;
    if (doc.contains("conventions")) {
        const json& c = doc["conventions"];
        if (!c.is_object()) fail("conventions", "expected an object");
        reject_unknown(c, "conventions", {"higg_coeff"});
        if (c.contains("higg_coeff")) {
            if (!c["higg_coeff"].is_string()) fail("conventions.higg_coeff", "expected a string");
            const auto s = c["higg_coeff"].get<std::string>();
            if (s == "geom")
                coeff = HiggConvention::Geom;
            else if (s == "intro")
                coeff = HiggConvention::Intro;
            else
                fail("conventions.higg_coeff", "unknown convention \"" + s + "\" (expected geom or intro)");
        }
    }

    ConfigDocument out{read_curve(doc, q), read_places(doc, q), P1Auto{}, coeff};
    out.higgs = read_higgs(doc, coeff, out.curve.genus);
    if (std::holds_alternative<P1Auto>(out.higgs) && out.curve.genus != 0)
        fail("higgs.mode", "p1-auto Higgs counts require genus 0; use explicit mode");
    return out;
}

ConfigDocument load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace tamecount
