#pragma once

// Experiment configurations and their dispatch to the module checks.

#include <string>
#include <vector>

#include "blaschke_lab/report.hpp"

namespace blaschke_lab {

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names = {"decompose", "commutant", "reducing", "ortho",
                                                   "shift-equiv", "cowen", "suite"};
    return names;
}

/// Exit codes of the CLI contract.
inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_config = 2;

/// Runs one command. Throws ConfigError for invalid configurations; check
/// failures are recorded in the report, or rethrown when strict.
Report run_experiment(const std::string& command, const Json& config, bool strict = false);

int exit_code(const Report& report);

}  // namespace blaschke_lab
