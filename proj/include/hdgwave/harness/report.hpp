#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hdgwave::harness {

/// Two-point orders log(e_{i-1}/e_i)/log(h_{i-1}/h_i), one per consecutive
/// pair. A pair with a non-positive or non-finite error gives no order.
/// Throws ConfigError unless both lists have the same length >= 2 and all
/// mesh sizes are positive and distinct.
std::vector<std::optional<double>> eoc(const std::vector<double>& errors, const std::vector<double>& hs);

struct IterationStats {
    int steps = 0;
    long newton_iterations = 0;
    int max_newton_iterations = 0;
    long gmres_iterations = 0;
    int max_gmres_iterations = 0;
    double max_orthogonality_loss = 0.0;
};

struct ReportRow {
    double h = 0.0;
    std::vector<double> errors;
    /// empty on the first row
    std::vector<std::optional<double>> orders;
    IterationStats stats;
    double wall_time = 0.0;
};

struct ConvergenceReport {
    std::string physics;
    int degree = 0;
    /// error column names, e.g. "v_l2"
    std::vector<std::string> fields;
    std::vector<ReportRow> rows;

    /// Appends a row and fills its orders from the previous one.
    void add_row(ReportRow row);
    int column(const std::string& field) const;
    /// order of `field` between rows i-1 and i (i >= 1)
    std::optional<double> order(const std::string& field, std::size_t i) const;
};

struct TimeSeries {
    std::string name;
    std::vector<double> times;
    std::vector<double> values;
};

/// Number formatting shared by all emitted files: at most six significant
/// digits, blank for a missing value.
std::string format_number(double x);
std::string format_number(const std::optional<double>& x);

/// Report as CSV: header row then one row per refinement with h, each error
/// and its order, and the iteration statistics. Wall time is not written so
/// that identical cases give identical files.
std::string report_csv(const ConvergenceReport& report);
/// One "time,value" line per sample.
std::string series_csv(const TimeSeries& series);

/// Writes `content` to `path`; throws std::runtime_error naming the path on
/// failure.
void write_file(const std::string& path, const std::string& content);

}
