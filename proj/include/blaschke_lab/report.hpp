#pragma once

// Check records and their canonical rendering.

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blaschke_lab/json_io.hpp"

namespace blaschke_lab {

struct Record {
    std::string name;
    /// Empty when the check raised.
    std::optional<double> residual;
    double tolerance = 0.0;
    bool pass = false;
    double wall_time_ms = 0.0;
    std::string error;
};

/// pass = residual < tolerance.
Record make_record(std::string name, double residual, double tolerance, double wall_time_ms = 0.0);

/// "value must exceed threshold", stored as residual = -value and
/// tolerance = -threshold so that pass = residual < tolerance still holds.
Record make_witness(std::string name, double value, double threshold, double wall_time_ms = 0.0);

Record make_error(std::string name, double tolerance, std::string error, double wall_time_ms = 0.0);

struct Report {
    std::string command;
    Json config = Json::object();
    /// Command output other than the checks.
    Json data = Json::object();
    std::vector<Record> records;

    bool all_pass() const;
};

enum class Format { json, csv };

/// Sorted keys, two-space indent, floats as %.12e, non-finite floats as null.
std::string render(const Report& report, Format format);
std::string render_json(const Json& value);

/// Inverse of render(.., Format::json).
Report parse_report(const std::string& text);

/// Runs fn, which returns the residual, and times it when timing is on.
/// Library errors become error records unless strict, in which case they
/// propagate.
Record run_check(const std::string& name, double tolerance, const std::function<double()>& fn, bool timing,
                 bool strict);
Record run_witness(const std::string& name, double threshold, const std::function<double()>& fn, bool timing,
                   bool strict);

}  // namespace blaschke_lab
