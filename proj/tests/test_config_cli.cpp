#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "tamecount/config.hpp"
#include "tamecount/errors.hpp"

using namespace tamecount;
namespace fs = std::filesystem;

namespace {

std::string where_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ValidationError& e) {
        return e.where();
    }
    return "<accepted>";
}

const std::string kFour = R"({"q": 5, "places": [
  {"degree": 1, "type": "r", "eig": ["1/4", "3/4"]}, {"degree": 1, "type": "r", "eig": ["1/4", "3/4"]},
  {"degree": 1, "type": "r", "eig": ["1/4", "3/4"]}, {"degree": 1, "type": "r", "eig": ["1/4", "3/4"]}]})";

std::string bundled(const std::string& name) { return std::string(TAMECOUNT_CONFIG_DIR) + "/" + name; }

std::string temp_config(const std::string& name, const std::string& text) {
    const fs::path p = fs::temp_directory_path() / ("tamecount_test_" + name + ".json");
    std::ofstream(p) << text;
    return p.string();
}

struct Result {
    int code;
    std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "tamecount");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> tsv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos; start = tab + 1)
            cells.push_back(line.substr(start, tab - start));
        cells.push_back(line.substr(start));
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("valid documents") {
    const auto doc = parse_config(kFour);
    CHECK(doc.curve.genus == 0);
    CHECK(doc.ramification.places.size() == 4);
    CHECK(std::holds_alternative<P1Auto>(doc.higgs));
    CHECK(doc.higg_coeff == HiggConvention::Geom);

    const auto g1 = parse_config(R"({"q": "5", "genus": 1, "point_counts": [4], "zeta_numerator": [1, -2, 5],
                                    "higgs": {"mode": "explicit", "convention": "intro", "values": {"3": "123456789012345678901234567890"}}})");
    CHECK(g1.curve.numerator == IntPoly({Integer(1), Integer(-2), Integer(5)}));
    const auto& ex = std::get<ExplicitHiggs>(g1.higgs);
    CHECK(ex.convention == ExplicitConvention::Intro);
    CHECK(ex.values.at(3) == Integer("123456789012345678901234567890"));

    const auto noh = parse_config(R"({"q": 2, "genus": 1, "zeta_numerator": [1, -1, 2]})");
    CHECK(std::get<ExplicitHiggs>(noh.higgs).values.empty());
    CHECK(std::get<P1Auto>(parse_config(R"({"q": 3, "higgs": {"mode": "p1-auto", "e": -1}})").higgs).e == -1);
    CHECK(parse_config(R"({"q": 3, "conventions": {"higg_coeff": "intro"}})").higg_coeff == HiggConvention::Intro);
}

TEST_CASE("errors name the JSON path") {
    CHECK(where_of("{") == "$");
    CHECK(where_of("[]") == "$");
    CHECK(where_of("{}") == "q");
    CHECK(where_of(R"({"q": 6})") == "q");
    CHECK(where_of(R"({"q": 5, "colour": 1})") == "colour");
    CHECK(where_of(R"({"q": 5, "places": [{"degree": 1, "type": "r", "eig": ["1/4", "3/4"], "x": 0}]})") == "places[0].x");
    CHECK(where_of(R"({"q": 5, "places": [{"degree": 1, "type": "s", "eig": ["1/0"]}]})") == "places[0].eig[0]");
    CHECK(where_of(R"({"q": 5, "places": [{"degree": 1, "type": "s", "eig": ["0.5"]}]})") == "places[0].eig[0]");
    CHECK(where_of(R"({"q": 5, "places": [{"degree": 1, "type": "s", "eig": [0.5]}]})") == "places[0].eig[0]");
    CHECK(where_of(R"({"q": 5, "places": [{"degree": 1, "type": "x", "eig": ["0"]}]})") == "places[0].type");
    CHECK(where_of(R"({"q": 5, "places": [{"degree": 0, "type": "s", "eig": ["0"]}]})") == "places[0].degree");
    CHECK(where_of(R"({"q": 5, "places": [{"type": "s", "eig": ["0"]}]})") == "places[0].degree");
    CHECK(where_of(R"({"q": 5, "places": [{"degree": 1, "type": "s", "eig": ["0"]}, {"degree": 1, "type": "r", "eig": ["1/4"]}]})") == "places[1]");
    CHECK(where_of(R"({"q": 5, "places": [{"degree": 1, "type": "s", "eig": ["1/3"]}]})") == "places[0]");
    CHECK(where_of(R"({"q": 5, "point_counts": [6]})") == "point_counts");
    CHECK(where_of(R"({"q": 5, "zeta_numerator": [1, 1]})") == "zeta_numerator");
    CHECK(where_of(R"({"q": 5, "genus": 1})") == "zeta_numerator");
    CHECK(where_of(R"({"q": 5, "genus": 1, "zeta_numerator": [1, 7, 5]})") == "zeta_numerator");
    CHECK(where_of(R"({"q": 5, "genus": 1, "zeta_numerator": [1, -2, 5], "point_counts": [5]})") == "point_counts");
    CHECK(where_of(R"({"q": 5, "genus": 1, "zeta_numerator": [1, -2, 5], "higgs": {"mode": "p1-auto"}})") == "higgs.mode");
    CHECK(where_of(R"({"q": 5, "higgs": {"mode": "explicit", "values": {"1": 3}}})") == "higgs.convention");
    CHECK(where_of(R"({"q": 5, "higgs": {"mode": "explicit", "convention": "other", "values": {}}})") == "higgs.convention");
    CHECK(where_of(R"({"q": 5, "higgs": {"mode": "explicit", "convention": "intro", "values": {"zero": 3}}})") == "higgs.values.zero");
    CHECK(where_of(R"({"q": 5, "higgs": {"mode": "explicit", "convention": "intro", "values": {"1": "x"}}})") == "higgs.values.1");
    CHECK(where_of(R"({"q": 5, "higgs": {"mode": "p1-auto", "e": 2}})") == "higgs.e");
    CHECK(where_of(R"({"q": 5, "higgs": {"mode": "guess"}})") == "higgs.mode");
    CHECK(where_of(R"({"q": 5, "conventions": {"higg_coeff": "other"}})") == "conventions.higg_coeff");
}

TEST_CASE("bundled documents parse") {
    int n = 0;
    for (const auto& entry : fs::directory_iterator(TAMECOUNT_CONFIG_DIR)) {
        if (entry.path().extension() != ".json") continue;
        CHECK_NOTHROW(load_config(entry.path().string()));
        ++n;
    }
    CHECK(n >= 8);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ValidationError);
}

}

TEST_SUITE("cli") {

TEST_CASE("count on the four-puncture document") {
    const auto r = run_cli({"count", "--config", bundled("four_puncture_q5.json"), "--k", "1..3"});
    REQUIRE(r.code == 0);
    const auto rows = tsv(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"k", "E2", "higg", "err", "pic_k", "pic_2k", "c_k", "b_k", "case",
                                              "spectral_case", "convention", "warning"});
    CHECK(rows[1][1] == "2");
    CHECK(rows[2][1] == "22");
    CHECK(rows[3][1] == "122");
    CHECK(rows[1][8] == "iii");
}

TEST_CASE("json and tsv agree, output is deterministic") {
    const auto path = bundled("mixed_q4.json");
    const auto a = run_cli({"count", "--config", path, "--k", "1..6"});
    const auto b = run_cli({"count", "--config", path, "--k", "1..6", "--threads", "4"});
    CHECK(a.out == b.out);
    CHECK(a.out == run_cli({"count", "--config", path, "--k", "1..6"}).out);
    const auto j = run_cli({"count", "--config", path, "--k", "1..6", "--format", "json"});
    REQUIRE(j.code == 0);
    const auto arr = nlohmann::json::parse(j.out);
    const auto rows = tsv(a.out);
    REQUIRE(arr.size() + 1 == rows.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        for (std::size_t c = 0; c < rows[0].size(); ++c) {
            CHECK(arr[i][rows[0][c]].is_string());
            CHECK(arr[i][rows[0][c]].get<std::string>() == rows[i + 1][c]);
        }
}

TEST_CASE("product failure is reported") {
    const auto r = run_cli({"count", "--config", bundled("product_fail_q5.json"), "--k", "1..2"});
    REQUIRE(r.code == 0);
    const auto rows = tsv(r.out);
    CHECK(rows[1][1] == "0");
    CHECK_FALSE(rows[1][11].empty());
}

TEST_CASE("crosscheck passes on every bundled document") {
    for (const auto& entry : fs::directory_iterator(TAMECOUNT_CONFIG_DIR)) {
        if (entry.path().extension() != ".json") continue;
        const auto r = run_cli({"crosscheck", "--config", entry.path().string(), "--k", "1..12"});
        CHECK_MESSAGE(r.code == 0, entry.path().filename().string() << "\n" << r.out << r.err);
        CHECK(r.out.find("FAIL") == std::string::npos);
    }
}

TEST_CASE("oracles agree") {
    CHECK(run_cli({"oracle", "pr", "--config", bundled("mixed_q4.json"), "--k", "1..6"}).code == 0);
    CHECK(run_cli({"oracle", "pr", "--config", bundled("cusp_degree2_q2.json"), "--k", "1..8"}).code == 0);
    CHECK(run_cli({"oracle", "gr", "--config", bundled("five_r_q5.json"), "--k", "1..2"}).code == 0);
    CHECK(run_cli({"oracle", "gr", "--config", bundled("mixed_q4.json"), "--k", "1", "--require-nonzero"}).code == 0);
}

TEST_CASE("higgs subcommand") {
    const auto r = run_cli({"higgs", "--config", bundled("five_r_q5.json"), "--k", "1..2", "--policy", "forced"});
    REQUIRE(r.code == 0);
    const auto rows = tsv(r.out);
    CHECK(rows[1][2] == "32");   // Q^2 + Q + 2
    CHECK(rows[2][2] == "652");
    const auto d = run_cli({"higgs", "--config", bundled("four_puncture_q5.json"), "--k", "1"});
    CHECK(tsv(d.out)[1][2] == "10");
}

TEST_CASE("certify") {
    const auto r = run_cli({"certify", "--config", bundled("four_puncture_q5.json"), "--horizon", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("rejected") == std::string::npos);
    CHECK(r.out.find("integer polynomial fit") != std::string::npos);
}

TEST_CASE("zeta") {
    const auto r = run_cli({"zeta", "--q", "5", "--g", "1", "--point-counts", "4"});
    REQUIRE(r.code == 0);
    CHECK(tsv(r.out)[1][2] == "1,-2,5");
    CHECK(run_cli({"zeta", "--q", "5", "--g", "1", "--point-counts", "20"}).code == 1);
}

TEST_CASE("exit codes") {
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"count"}).code == 1);
    CHECK(run_cli({"count", "--config", "/nonexistent.json"}).code == 1);
    CHECK(run_cli({"count", "--config", bundled("four_puncture_q5.json"), "--k", "0..3"}).code == 1);
    CHECK(run_cli({"count", "--config", bundled("four_puncture_q5.json"), "--k", "1..100"}).code == 1);
    CHECK(run_cli({"count", "--config", bundled("four_puncture_q5.json"), "--format", "xml"}).code == 1);
    const auto bad = run_cli({"count", "--config", temp_config("badpath", R"({"q": 5, "places": [{"degree": 1, "type": "s", "eig": ["1/0"]}]})")});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("places[0].eig[0]") != std::string::npos);
    CHECK(run_cli({"count", "--config", bundled("cusp_and_unipotent_q2.json"), "--k", "1"}).code == 1);

    const auto neg = run_cli({"count", "--config",
                              temp_config("negative", R"({"q": 5, "places": [
      {"degree": 1, "type": "r", "eig": ["1/4", "3/4"]}, {"degree": 1, "type": "r", "eig": ["1/4", "3/4"]},
      {"degree": 1, "type": "r", "eig": ["1/4", "3/4"]}, {"degree": 1, "type": "r", "eig": ["1/4", "3/4"]}],
      "higgs": {"mode": "explicit", "convention": "intro", "values": {"1": 3}}})"),
                              "--k", "1"});
    CHECK(neg.code == 2);
    CHECK(neg.err.find("higg=3") != std::string::npos);

    std::string many = R"({"q": 3, "places": [)";
    for (int i = 0; i < 7; ++i) many += std::string(i ? "," : "") + R"({"degree": 3, "type": "s", "eig": ["0"]})";
    many += "]}";
    CHECK(run_cli({"count", "--config", temp_config("many", many), "--k", "1"}).code == 3);
}

}
