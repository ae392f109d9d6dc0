#include "bass/io.hpp"

#include <doctest.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace bass;

namespace {

std::filesystem::path scratch_file(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "bass_io_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("format_double round-trips exactly") {
    for (const double v : {0.1, 1.0 / 3.0, -2.5e-300, 1.7976931348623157e308, 0.0,
                           123456.789, -0.030638949671089946}) {
        const std::string s = format_double(v);
        double back = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(res.ec == std::errc{});
        CHECK(back == v);
    }
}

TEST_CASE("read_xy_csv parses the t,y schema") {
    const auto path = scratch_file("good.csv");
    std::ofstream(path) << "t,y\n0,1.5\n0.5,2.5\n1,-3\n";
    const XyData d = read_xy_csv(path.string());
    CHECK(d.t == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(d.y == std::vector<double>{1.5, 2.5, -3.0});
}

TEST_CASE("read_xy_csv reports the offending line") {
    const auto bad_header = scratch_file("bad_header.csv");
    std::ofstream(bad_header) << "time,value\n0,1\n";
    CHECK_THROWS_AS(read_xy_csv(bad_header.string()), CsvError);

    const auto bad_number = scratch_file("bad_number.csv");
    std::ofstream(bad_number) << "t,y\n0,1\nx,2\n";
    try {
        read_xy_csv(bad_number.string());
        FAIL("expected CsvError");
    } catch (const CsvError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(read_xy_csv(scratch_file("missing.csv").string()), CsvError);
}

TEST_CASE("curve and benchmark CSV have the fixed schemas") {
    FitSummary fs;
    fs.f_mean = {1.0};
    fs.f_lo95 = {0.5};
    fs.f_hi95 = {1.5};
    fs.lambda_mean = {2.0};
    const std::string curve = curve_csv(std::vector<double>{0.25}, fs);
    CHECK(curve == "t,mean,lo95,hi95,lambda_mean\n0.25,1,0.5,1.5,2\n");

    BenchmarkReport report;
    report.rows.push_back(BenchmarkRow{2, Method::Oss, 3, 0.5, 0.25, 0.75, 0, 0.0});
    const std::string bench = benchmark_csv(report);
    CHECK(bench ==
          "example,method,reps,median_mse,q1_mse,q3_mse,failures,wall_seconds\n"
          "2,OSS,3,0.5,0.25,0.75,0,0\n");
}

TEST_CASE("value-per-line reader skips blanks and handles CRLF") {
    const auto path = scratch_file("values.txt");
    std::ofstream(path) << "1.5\r\n\n-2\n";
    CHECK(read_value_lines(path.string()) == std::vector<double>{1.5, -2.0});
}
