// Acceptance battery driver: `acceptance N` runs criterion N and prints one
// line per record followed by the criterion verdict.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "blaschke_lab/battery.hpp"
#include "blaschke_lab/report.hpp"

using namespace blaschke_lab;

namespace {

constexpr std::uint64_t seed = 20240601;

void print(const Record& r) {
    char residual[32] = "none";
    if (r.residual) std::snprintf(residual, sizeof residual, "%.3e", *r.residual);
    std::printf("  %-48s %s  residual=%s tolerance=%.3e%s%s\n", r.name.c_str(), r.pass ? "pass" : "FAIL", residual,
                r.tolerance, r.error.empty() ? "" : "  error: ", r.error.c_str());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(BLASCHKE_LAB_CLI) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string tmp(const std::string& name) { return std::string(BLASCHKE_LAB_TEST_TMP) + "/acceptance_" + name; }

bool check(const std::string& name, bool ok, const std::string& detail) {
    std::printf("  %-48s %s  %s\n", name.c_str(), ok ? "pass" : "FAIL", detail.c_str());
    return ok;
}

bool criterion_12() {
    const std::string cfg = tmp("suite.json");
    std::ofstream(cfg) << "{\"seed\": " << seed << "}\n";
    const int a = run_cli("suite --config " + cfg + " --out " + tmp("run1.json"));
    const int b = run_cli("suite --config " + cfg + " --out " + tmp("run2.json"));
    const std::string r1 = slurp(tmp("run1.json")), r2 = slurp(tmp("run2.json"));

    bool ok = check("c12.byte_identical", !r1.empty() && r1 == r2, std::to_string(r1.size()) + " bytes");
    ok &= check("c12.same_exit_code", a == b, std::to_string(a) + " vs " + std::to_string(b));

    bool parsed_ok = false;
    bool round_trip = false;
    int expected = -1;
    try {
        const Report rep = parse_report(r1);
        parsed_ok = true;
        expected = rep.all_pass() ? 0 : 1;
        round_trip = render(rep, Format::json) == r1;
    } catch (const std::exception&) {
    }
    ok &= check("c12.report_parses", parsed_ok, "");
    ok &= check("c12.render_round_trip", round_trip, "");
    ok &= check("c12.suite_exit_matches_records", a == expected,
                "exit " + std::to_string(a) + ", records imply " + std::to_string(expected));

    const std::string good = tmp("decompose.json");
    std::ofstream(good) << R"({"B": {"monomial": 2}, "f": [1, 2, 3, 4], "degree": 8})" << "\n";
    const std::string bad = tmp("malformed.json");
    std::ofstream(bad) << R"({"B": {"zeros": [{"re": "half"}]}, "f": [1]})" << "\n";
    const int pass_code = run_cli("decompose --config " + good + " --out " + tmp("decompose_out.json"));
    const int bad_code = run_cli("decompose --config " + bad + " --out " + tmp("malformed_out.json"));
    ok &= check("c12.passing_command_exit_0", pass_code == 0, "exit " + std::to_string(pass_code));
    ok &= check("c12.malformed_config_exit_2", bad_code == 2, "exit " + std::to_string(bad_code));
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..12>\n");
        return 2;
    }
    const int c = std::atoi(argv[1]);
    if (c < 1 || c > battery_size) {
        std::fprintf(stderr, "criterion must be in 1..12\n");
        return 2;
    }
    bool ok = true;
    if (c == 12) {
        ok = criterion_12();
    } else {
        const auto records = run_criterion(c, seed);
        for (const auto& r : records) {
            print(r);
            ok &= r.pass;
        }
        ok &= !records.empty();
    }
    std::printf("criterion %d: %s\n", c, ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}
