#pragma once

#include "bass/bench.hpp"
#include "bass/mcmc.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bass {

/// Malformed input file; carries the 1-based line number.
class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

struct XyData {
    std::vector<double> t;
    std::vector<double> y;
};

/// Reads an observation file with header `t,y`, one observation per row.
XyData read_xy_csv(const std::string& path);

/// One value per line (grid or lambda files for the matrix dump).
std::vector<double> read_value_lines(const std::string& path);

/// Curve output with header t,mean,lo95,hi95,lambda_mean.
std::string curve_csv(std::span<const double> t, const FitSummary& summary);

/// Benchmark output with header
/// example,method,reps,median_mse,q1_mse,q3_mse,failures,wall_seconds.
std::string benchmark_csv(const BenchmarkReport& report);

void write_file(const std::string& path, const std::string& content);

} // namespace bass
