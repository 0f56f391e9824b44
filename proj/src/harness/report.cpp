#include "hdgwave/harness/report.hpp"

#include "hdgwave/common.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hdgwave::harness {

std::vector<std::optional<double>> eoc(const std::vector<double>& errors, const std::vector<double>& hs)
{
    if (errors.size() != hs.size())
        throw ConfigError("e.o.c.: error and mesh size lists differ in length");
    if (errors.size() < 2)
        throw ConfigError("e.o.c.: at least two refinements are needed");
    for (double h : hs)
        if (!(h > 0.0) || !std::isfinite(h))
            throw ConfigError("e.o.c.: mesh sizes must be positive");
    std::vector<std::optional<double>> out;
    for (std::size_t i = 1; i < errors.size(); ++i) {
        if (hs[i] == hs[i - 1])
            throw ConfigError("e.o.c.: repeated mesh size");
        const double a = errors[i - 1], b = errors[i];
        if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
            out.emplace_back();
        else
            out.emplace_back(std::log(a / b) / std::log(hs[i - 1] / hs[i]));
    }
    return out;
}

void ConvergenceReport::add_row(ReportRow row)
{
    row.orders.clear();
    if (!rows.empty()) {
        const ReportRow& prev = rows.back();
        for (std::size_t f = 0; f < row.errors.size(); ++f)
            row.orders.push_back(eoc({prev.errors[f], row.errors[f]}, {prev.h, row.h})[0]);
    }
    rows.push_back(std::move(row));
}

int ConvergenceReport::column(const std::string& field) const
{
    for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i] == field)
            return static_cast<int>(i);
    throw std::out_of_range("no error column '" + field + "'");
}

std::optional<double> ConvergenceReport::order(const std::string& field, std::size_t i) const
{
    if (i == 0 || i >= rows.size())
        return std::nullopt;
    return rows[i].orders[column(field)];
}

std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string format_number(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

std::string report_csv(const ConvergenceReport& report)
{
    std::ostringstream out;
    out << "h";
    for (const std::string& f : report.fields)
        out << "," << f << "," << f << "_eoc";
    out << ",steps,newton_iterations,max_newton_iterations,gmres_iterations,max_gmres_iterations,"
           "max_orthogonality_loss\n";
    for (const ReportRow& row : report.rows) {
        out << format_number(row.h);
        for (std::size_t f = 0; f < row.errors.size(); ++f)
            out << "," << format_number(row.errors[f]) << ","
                << (row.orders.empty() ? std::string() : format_number(row.orders[f]));
        const IterationStats& s = row.stats;
        out << "," << s.steps << "," << s.newton_iterations << "," << s.max_newton_iterations << ","
            << s.gmres_iterations << "," << s.max_gmres_iterations << "," << format_number(s.max_orthogonality_loss)
            << "\n";
    }
    return out.str();
}

std::string series_csv(const TimeSeries& series)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < series.times.size(); ++i)
        out << format_number(series.times[i]) << "," << format_number(series.values[i]) << "\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing '" + path + "'");
}

}
