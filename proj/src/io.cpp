#include "bass/io.hpp"

#include "bass/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace bass {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view token, std::size_t line) {
    // trim spaces and a possible trailing CR
    while (!token.empty() && (token.front() == ' ' || token.front() == '\t'))
        token.remove_prefix(1);
    while (!token.empty() &&
           (token.back() == ' ' || token.back() == '\t' || token.back() == '\r'))
        token.remove_suffix(1);
    double value = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw CsvError("cannot parse number '" + std::string(token) + "'", line);
    if (!std::isfinite(value))
        throw CsvError("non-finite value", line);
    return value;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r')
        s.pop_back();
    return s;
}

} // namespace

XyData read_xy_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CsvError("cannot open '" + path + "'", 0);

    std::string line;
    std::size_t lineno = 0;
    XyData data;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (lineno == 1) {
            if (line != "t,y")
                throw CsvError("expected header 't,y'", lineno);
            continue;
        }
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw CsvError("expected two comma-separated fields", lineno);
        data.t.push_back(parse_double(std::string_view(line).substr(0, comma), lineno));
        data.y.push_back(parse_double(std::string_view(line).substr(comma + 1), lineno));
    }
    if (lineno == 0)
        throw CsvError("empty file", 0);
    if (data.t.empty())
        throw CsvError("no observations", lineno);
    return data;
}

std::vector<double> read_value_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CsvError("cannot open '" + path + "'", 0);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty())
            continue;
        values.push_back(parse_double(line, lineno));
    }
    return values;
}

std::string curve_csv(std::span<const double> t, const FitSummary& summary) {
    if (t.size() != summary.f_mean.size())
        throw InputError("curve_csv: length mismatch");
    std::string out = "t,mean,lo95,hi95,lambda_mean\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        out += format_double(t[i]);
        out += ',';
        out += format_double(summary.f_mean[i]);
        out += ',';
        out += format_double(summary.f_lo95[i]);
        out += ',';
        out += format_double(summary.f_hi95[i]);
        out += ',';
        out += format_double(summary.lambda_mean[i]);
        out += '\n';
    }
    return out;
}

std::string benchmark_csv(const BenchmarkReport& report) {
    std::string out = "example,method,reps,median_mse,q1_mse,q3_mse,failures,wall_seconds\n";
    for (const BenchmarkRow& row : report.rows) {
        out += std::to_string(row.example);
        out += ',';
        out += method_label(row.method);
        out += ',';
        out += std::to_string(row.reps);
        out += ',';
        out += format_double(row.median_mse);
        out += ',';
        out += format_double(row.q1_mse);
        out += ',';
        out += format_double(row.q3_mse);
        out += ',';
        out += std::to_string(row.failures);
        out += ',';
        out += format_double(row.wall_seconds);
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << content;
}

} // namespace bass
