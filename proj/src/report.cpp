#include "kinverify/report.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace kinv {

VerificationReport make_report(const std::string& experiment, const std::string& params,
                               double measured, double target, double tolerance,
                               const std::string& note) {
    VerificationReport r;
    r.experiment = experiment;
    r.params = params;
    r.measured = measured;
    r.target = target;
    r.tolerance = tolerance;
    r.pass = std::isfinite(measured) && std::fabs(measured - target) <= tolerance;
    r.note = note;
    return r;
}

VerificationReport make_bound_report(const std::string& experiment, const std::string& params,
                                     double measured, double bound,
                                     const std::string& note) {
    VerificationReport r;
    r.experiment = experiment;
    r.params = params;
    r.measured = measured;
    r.target = bound;
    r.tolerance = 0.0;
    r.pass = std::isfinite(measured) && measured <= bound;
    r.note = note;
    return r;
}

bool ReportSet::all_pass() const {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

std::size_t ReportSet::fail_count() const {
    std::size_t n = 0;
    for (const auto& r : rows)
        if (!r.pass) ++n;
    return n;
}

namespace {

// quote a CSV cell only when it needs it
std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string num_cell(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

void write_csv(const ReportSet& reports, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << "experiment,params,measured,target,tolerance,pass\n";
    for (const auto& r : reports.rows) {
        f << csv_cell(r.experiment) << ',' << csv_cell(r.params) << ','
          << num_cell(r.measured) << ',' << num_cell(r.target) << ','
          << num_cell(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
    }
}

void write_summary_json(const ReportSet& reports, const std::string& path) {
    nlohmann::json j;
    j["total"] = reports.rows.size();
    j["failed"] = reports.fail_count();
    j["all_pass"] = reports.all_pass();
    j["rows"] = nlohmann::json::array();
    for (const auto& r : reports.rows) {
        nlohmann::json row;
        row["experiment"] = r.experiment;
        row["params"] = r.params;
        row["measured"] = r.measured;
        row["target"] = r.target;
        row["tolerance"] = r.tolerance;
        row["pass"] = r.pass;
        if (!r.note.empty()) row["note"] = r.note;
        j["rows"].push_back(row);
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << j.dump(2) << '\n';
}

bool FlatConfig::has(const std::string& key) const {
    for (const auto& kv : entries)
        if (kv.first == key) return true;
    return false;
}

std::string FlatConfig::get(const std::string& key, const std::string& fallback) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
        if (it->first == key) return it->second;
    return fallback;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

bool parse_flat_config(const std::string& path, FlatConfig& out, std::string& error) {
    std::ifstream f(path);
    if (!f) {
        error = "cannot open " + path;
        return false;
    }
    out.entries.clear();
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            error = "line " + std::to_string(lineno) + ": expected key = value, got '" +
                    t + "'";
            return false;
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty()) {
            error = "line " + std::to_string(lineno) + ": empty key";
            return false;
        }
        out.entries.emplace_back(key, val);
    }
    return true;
}

}  // namespace kinv
