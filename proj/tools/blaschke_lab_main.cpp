// blaschke-lab <command> --config path.json [--out path] [--format json|csv] [--strict]

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "blaschke_lab/errors.hpp"
#include "blaschke_lab/experiment.hpp"

namespace bl = blaschke_lab;

namespace {

bl::Json read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bl::ConfigError("--config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return bl::Json::parse(ss.str());
    } catch (const bl::Json::parse_error& e) {
        throw bl::ConfigError("--config: malformed JSON in " + path + ": " + e.what());
    }
}

}  // namespace

const std::map<std::string, std::string> summaries = {
    {"decompose", "shell decomposition of a polynomial with round-trip checks"},
    {"commutant", "build commutant operators from multiplier matrices and check them"},
    {"reducing", "reducing-subspace projections and their residuals"},
    {"ortho", "the orthogonal X-space chain and block triangularity"},
    {"shift-equiv", "intertwiners carrying the shift onto T_B"},
    {"cowen", "the point-evaluation commutant test"},
    {"suite", "the full acceptance battery"},
};

int main(int argc, char** argv) {
    CLI::App app{"Finite-section experiments for Toeplitz operators with finite Blaschke symbols"};
    app.require_subcommand(1, 1);
    std::string config_path, out_path, format = "json";
    bool strict = false;
    for (const auto& name : bl::commands()) {
        CLI::App* sub = app.add_subcommand(name, summaries.at(name));
        sub->add_option("--config", config_path, "experiment configuration (JSON)")->required();
        sub->add_option("--out", out_path, "write the report here instead of stdout");
        sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_flag("--strict", strict, "abort on the first check error");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : bl::exit_config;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    bl::Report report;
    try {
        report = bl::run_experiment(command, read_config(config_path), strict);
    } catch (const bl::ConfigError& e) {
        std::cerr << "blaschke-lab: configuration error: " << e.what() << "\n";
        return bl::exit_config;
    } catch (const std::exception& e) {
        std::cerr << "blaschke-lab: " << command << " failed: " << e.what() << "\n";
        return bl::exit_fail;
    }

    const std::string text = bl::render(report, format == "csv" ? bl::Format::csv : bl::Format::json);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << text;
        if (!out) {
            std::cerr << "blaschke-lab: cannot write " << out_path << "\n";
            return bl::exit_config;
        }
    }
    return bl::exit_code(report);
}
