#pragma once

// VerificationReport: one measured quantity against its target and tolerance,
// plus the collection type the CLI serializes to results.csv / summary.json.

#include <string>
#include <vector>

namespace kinv {

struct VerificationReport {
    std::string experiment;  // e.g. "kernel_mass"
    std::string params;      // parameter tuple, e.g. "tau=1"
    double measured = 0.0;
    double target = 0.0;
    double tolerance = 0.0;  // interpretation: |measured - target| <= tolerance
    bool pass = false;
    std::string note;        // free text (bump spec, truncation settings, ...)
};

// |measured - target| <= tolerance
VerificationReport make_report(const std::string& experiment, const std::string& params,
                               double measured, double target, double tolerance,
                               const std::string& note = "");

// pass iff measured <= bound (records bound as target, tolerance 0)
VerificationReport make_bound_report(const std::string& experiment, const std::string& params,
                                     double measured, double bound,
                                     const std::string& note = "");

struct ReportSet {
    std::vector<VerificationReport> rows;

    void add(VerificationReport r) { rows.push_back(std::move(r)); }
    void merge(const ReportSet& other) {
        rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    }
    bool all_pass() const;
    std::size_t fail_count() const;
};

// results.csv with the fixed header
//   experiment,params,measured,target,tolerance,pass
void write_csv(const ReportSet& reports, const std::string& path);

// summary.json: totals plus the full row list.
void write_summary_json(const ReportSet& reports, const std::string& path);

// Flat key = value configuration files.  Blank lines and lines starting with
// '#' are ignored.  Returns false and fills error with "line N: ..." on the
// first malformed line.
struct FlatConfig {
    std::vector<std::pair<std::string, std::string>> entries;
    bool has(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback = "") const;
};
bool parse_flat_config(const std::string& path, FlatConfig& out, std::string& error);

}  // namespace kinv
