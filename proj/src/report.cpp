#include "blaschke_lab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "blaschke_lab/errors.hpp"

namespace blaschke_lab {

Record make_record(std::string name, double residual, double tolerance, double wall_time_ms) {
    Record r;
    r.name = std::move(name);
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = residual < tolerance;
    r.wall_time_ms = wall_time_ms;
    return r;
}

Record make_witness(std::string name, double value, double threshold, double wall_time_ms) {
    return make_record(std::move(name), 0.0 - value, 0.0 - threshold, wall_time_ms);
}

Record make_error(std::string name, double tolerance, std::string error, double wall_time_ms) {
    Record r;
    r.name = std::move(name);
    r.tolerance = tolerance;
    r.error = std::move(error);
    r.wall_time_ms = wall_time_ms;
    return r;
}

bool Report::all_pass() const {
    return std::all_of(records.begin(), records.end(), [](const Record& r) { return r.pass; });
}

namespace {

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

void emit(const Json& v, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : v.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + Json(key).dump() + ": ";
                emit(value, indent + 2, out);
            }
            out += "\n" + close + "}";
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                emit(v[i], indent + 2, out);
            }
            out += "\n" + close + "]";
            return;
        }
        case Json::value_t::number_float: out += format_double(v.get<double>()); return;
        default: out += v.dump(); return;
    }
}

Json record_to_json(const Record& r) {
    Json j = {{"name", r.name},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"wall_time_ms", r.wall_time_ms},
              {"residual", r.residual ? Json(*r.residual) : Json(nullptr)},
              {"error", r.error.empty() ? Json(nullptr) : Json(r.error)}};
    return j;
}

double as_double(const Json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string render_json(const Json& value) {
    std::string out;
    emit(value, 0, out);
    out += "\n";
    return out;
}

std::string render(const Report& report, Format format) {
    if (format == Format::csv) {
        std::string out = "name,residual,tolerance,pass,wall_time_ms\n";
        for (const auto& r : report.records) {
            out += csv_field(r.name) + ",";
            out += (r.residual ? format_double(*r.residual) : std::string()) + ",";
            out += format_double(r.tolerance) + ",";
            out += std::string(r.pass ? "true" : "false") + ",";
            out += format_double(r.wall_time_ms) + "\n";
        }
        return out;
    }
    Json records = Json::array();
    std::size_t passed = 0, errors = 0;
    for (const auto& r : report.records) {
        records.push_back(record_to_json(r));
        passed += r.pass ? 1 : 0;
        errors += r.error.empty() ? 0 : 1;
    }
    const std::size_t total = report.records.size();
    Json doc = {{"command", report.command},
                {"config", report.config},
                {"data", report.data},
                {"records", records},
                {"summary", {{"total", total}, {"passed", passed}, {"failed", total - passed}, {"errors", errors}}}};
    return render_json(doc);
}

Report parse_report(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("report is not valid JSON: ") + e.what());
    }
    Report out;
    try {
        out.command = doc.at("command").get<std::string>();
        out.config = doc.at("config");
        out.data = doc.at("data");
        for (const auto& j : doc.at("records")) {
            Record r;
            r.name = j.at("name").get<std::string>();
            if (!j.at("residual").is_null()) r.residual = j.at("residual").get<double>();
            r.tolerance = as_double(j.at("tolerance"));
            r.pass = j.at("pass").get<bool>();
            r.wall_time_ms = as_double(j.at("wall_time_ms"));
            if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
            out.records.push_back(std::move(r));
        }
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("report is missing a field: ") + e.what());
    }
    return out;
}

namespace {

template <class Make>
Record timed(const std::string& name, double tolerance, const std::function<double()>& fn, bool timing, bool strict,
             Make make) {
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        if (!timing) return 0.0;
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };
    try {
        const double value = fn();
        return make(name, value, tolerance, elapsed());
    } catch (const std::exception& e) {
        if (strict) throw;
        return make_error(name, make(name, 0.0, tolerance, 0.0).tolerance, e.what(), elapsed());
    }
}

}  // namespace

Record run_check(const std::string& name, double tolerance, const std::function<double()>& fn, bool timing,
                 bool strict) {
    return timed(name, tolerance, fn, timing, strict,
                 [](const std::string& n, double v, double t, double ms) { return make_record(n, v, t, ms); });
}

Record run_witness(const std::string& name, double threshold, const std::function<double()>& fn, bool timing,
                   bool strict) {
    return timed(name, threshold, fn, timing, strict,
                 [](const std::string& n, double v, double t, double ms) { return make_witness(n, v, t, ms); });
}

}  // namespace blaschke_lab
