#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "blaschke_lab/errors.hpp"
#include "blaschke_lab/experiment.hpp"
#include "blaschke_lab/json_io.hpp"
#include "blaschke_lab/report.hpp"

using namespace blaschke_lab;

namespace {

std::string write_config(const std::string& name, const std::string& text) {
    const std::string path = std::string(BLASCHKE_LAB_TEST_TMP) + "/" + name;
    std::ofstream(path) << text;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(BLASCHKE_LAB_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("report rendering") {
    Report empty;
    empty.command = "suite";
    const Json doc = Json::parse(render(empty, Format::json));
    CHECK(doc["records"].empty());
    CHECK(doc["summary"]["total"] == 0);
    CHECK(render(empty, Format::csv) == "name,residual,tolerance,pass,wall_time_ms\n");

    Report one = empty;
    one.records.push_back(make_record("x.check", 1e-12, 1e-8));
    const std::string csv = render(one, Format::csv);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK(csv.find("x.check,1.000000000000e-12,1.000000000000e-08,true,0.000000000000e+00\n") != std::string::npos);

    one.records.push_back(make_witness("x.witness", 0.3, 0.01));
    one.records.push_back(make_error("x.error", 1e-6, "boom"));
    one.data["value"] = std::nan("");
    const std::string r1 = render(one, Format::json);
    CHECK(render(parse_report(r1), Format::json) == r1);
    const Json parsed = Json::parse(r1);
    CHECK(parsed["data"]["value"].is_null());
    CHECK(parsed["records"][1]["pass"] == true);
    CHECK(parsed["records"][2]["residual"].is_null());
    CHECK(parsed["summary"]["errors"] == 1);
    CHECK_FALSE(one.all_pass());
    CHECK_THROWS_AS(parse_report("{"), ConfigError);
}

TEST_CASE("witness records") {
    CHECK(make_witness("w", 0.5, 0.1).pass);
    CHECK_FALSE(make_witness("w", 0.05, 0.1).pass);
}

TEST_CASE("JSON schemas") {
    const Json j = Json::parse(R"({"theta": 0.5, "zeros": [{"re": 0.5, "im": 0.0}, {"re": -0.3, "im": 0.2, "mult": 2}]})");
    const BlaschkeProduct B = blaschke_from_json(j, "B");
    CHECK(B.degree() == 3);
    CHECK(blaschke_from_json(blaschke_to_json(B), "B").expanded_zeros() == B.expanded_zeros());
    CHECK(blaschke_from_json(Json::parse(R"({"monomial": 4})"), "B").is_monomial());

    try {
        blaschke_from_json(Json::parse(R"({"zeros": [{"re": 0.1}, {"re": "x"}]})"), "B");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("B.zeros[1]") != std::string::npos);
    }
    CHECK_THROWS_AS(settings_from_json(Json::parse(R"({"nonsense": 1})"), "tolerances"), ConfigError);
    CHECK(settings_from_json(Json::parse(R"({"gap_tol": 1e-3})"), "tolerances").gap_tol == 1e-3);
    CHECK(complex_from_json(Json::parse("[1, 2]"), "z") == Complex(1, 2));
}

TEST_CASE("decompose command") {
    const Json cfg = Json::parse(R"({"B": {"monomial": 2}, "f": [1, 2, 3, 4], "degree": 8})");
    const Report r = run_experiment("decompose", cfg);
    CHECK(r.all_pass());
    CHECK(exit_code(r) == exit_pass);
    const Json& comps = r.data["components"];
    CHECK(complex_from_json(comps[0][0], "c") == Complex(1.0));
    CHECK(complex_from_json(comps[0][1], "c") == Complex(3.0));
    CHECK(complex_from_json(comps[1][0], "c") == Complex(2.0));
    CHECK(complex_from_json(comps[1][1], "c") == Complex(4.0));
    CHECK(*r.records.front().residual == 0.0);

    CHECK_THROWS_AS(run_experiment("decompose", Json::parse(R"({"B": {"monomial": 2}})")), ConfigError);
    CHECK_THROWS_AS(run_experiment("decompose", Json::parse(R"({"B": {"monomial": 2}, "f": [1], "bogus": 1})")),
                    ConfigError);
    CHECK_THROWS_AS(run_experiment("nope", Json::object()), ConfigError);
}

TEST_CASE("command line driver") {
    const std::string good = write_config("good.json", R"({"B": {"monomial": 2}, "f": [1, 2, 3, 4], "degree": 8})");
    const std::string bad = write_config("bad.json", R"({"B": {"zeros": [{"re": 0.2}, {"im": "x"}]}, "f": [1]})");
    const std::string broken = write_config("broken.json", "{ not json");
    const std::string out = std::string(BLASCHKE_LAB_TEST_TMP) + "/decompose_out.json";

    CHECK(run_cli("decompose --config " + good + " --out " + out) == 0);
    const Json doc = Json::parse(slurp(out));
    CHECK(doc["command"] == "decompose");
    CHECK(doc["summary"]["failed"] == 0);
    CHECK(run_cli("decompose --config " + good + " --format csv --out " + out) == 0);
    CHECK(slurp(out).rfind("name,residual,tolerance,pass,wall_time_ms\n", 0) == 0);

    CHECK(run_cli("decompose --config " + bad) == 2);
    CHECK(run_cli("decompose --config " + broken) == 2);
    CHECK(run_cli("decompose --config /nonexistent/config.json") == 2);
    CHECK(run_cli("decompose --config " + good + " --out /nonexistent/dir/out.json") == 2);
    CHECK(run_cli("decompose") == 2);
    CHECK(run_cli("decompose --config " + good + " --format xml") == 2);

    const std::string red = write_config("red.json", R"({"B": {"monomial": 2}, "f": [1, 2, 3, 4], "degree": 8, "tol_round_trip": -1})");
    CHECK(run_cli("decompose --config " + red) == 1);
}
