#pragma once

#include "bass/mcmc.hpp"
#include "bass/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bass {

/// One simulation example: true function id, evaluation domain, grid size
/// and noise level.
struct ExampleSpec {
    int id = 2;
    double domain_lo = -2.0;
    double domain_hi = 2.0;
    std::size_t grid_size = 101;
    double noise_sd = 0.5;

    /// Defaults per example: 1 -> [0,1] x 101 x sd 0.9 (smooth spline),
    /// 2 -> [-2,2] x 101 x sd 0.5 (sharp peak), 3 -> [0,1] x 201 x sd 0.2
    /// (Doppler).
    static ExampleSpec by_id(int id);
};

enum class Method { BassV1, BassV2, Oss };

/// Report label ("BASS-v1", "BASS-v2", "OSS").
std::string method_label(Method m);

/// Parses a CLI token ("bass1", "bass2", "oss").
Method parse_method(const std::string& token);

/// True mean functions: 1 is a natural cubic spline with knots
/// (0, 0.2, 0.6, 0.7, 1) and coefficients (20, 4, 6, 11, 6); 2 is
/// sin(t) + 2 exp(-30 t^2); 3 is the Doppler function
/// sqrt(t(1-t)) sin(2 pi (1+eps)/(t+eps)) with eps = 0.125.
double true_function(int id, double t);

struct Dataset {
    std::vector<double> t;
    std::vector<double> y;
    std::vector<double> f_true;
};

/// Regular grid over the example domain with Gaussian noise added; the
/// noise stream is split from the master by (example id, replication), so
/// every method fitting replication r sees the same data.
Dataset gen_dataset(const ExampleSpec& ex, std::size_t rep_index, const RngStream& master);

/// Mean squared error between a fitted and the true curve.
double mse(std::span<const double> fhat, std::span<const double> ftrue);

struct BenchmarkRequest {
    std::vector<int> examples = {1, 2, 3};
    std::vector<Method> methods = {Method::BassV1, Method::BassV2, Method::Oss};
    std::size_t replications = 50;
    std::uint64_t seed = 0;
    std::size_t jobs = 0; // 0 = available parallelism
    std::size_t iterations = 5000;
    std::size_t burnin = 1000;
    /// When false (default) wall_seconds is reported as 0 so that repeated
    /// runs are byte-identical; timings still go to the summary log.
    bool measure_time = false;
};

struct BenchmarkRow {
    int example = 0;
    Method method = Method::Oss;
    std::size_t reps = 0;
    double median_mse = 0.0;
    double q1_mse = 0.0;
    double q3_mse = 0.0;
    std::size_t failures = 0;
    double wall_seconds = 0.0;
};

struct BenchmarkReport {
    std::vector<BenchmarkRow> rows; // ordered by (example, method) as requested
};

/// Model configuration used for one benchmark fit (knots at the data grid;
/// BASS-v2 uses the per-example subknot counts 3, 5, 10).
ModelSpec benchmark_model(Method method, int example_id, std::size_t iterations,
                          std::size_t burnin);

/// Fits every (example, method, replication) combination, replications in
/// parallel with split streams, and reports median/quartile MSE per cell.
/// Failed chains are excluded and counted. Deterministic given the seed,
/// independent of the job count.
BenchmarkReport run_benchmark(const BenchmarkRequest& req);

} // namespace bass
