#include "bass/bench.hpp"

#include "bass/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace bass {

ExampleSpec ExampleSpec::by_id(int id) {
    switch (id) {
        case 1: return ExampleSpec{1, 0.0, 1.0, 101, 0.9};
        case 2: return ExampleSpec{2, -2.0, 2.0, 101, 0.5};
        case 3: return ExampleSpec{3, 0.0, 1.0, 201, 0.2};
        default: throw InputError("example id must be 1, 2 or 3");
    }
}

std::string method_label(Method m) {
    switch (m) {
        case Method::BassV1: return "BASS-v1";
        case Method::BassV2: return "BASS-v2";
        case Method::Oss: return "OSS";
    }
    return "?";
}

Method parse_method(const std::string& token) {
    if (token == "bass1") return Method::BassV1;
    if (token == "bass2") return Method::BassV2;
    if (token == "oss") return Method::Oss;
    throw InputError("unknown method '" + token + "' (expected bass1, bass2 or oss)");
}

namespace {

// Natural cubic spline basis on knots xi_1 < ... < xi_K (truncated-power
// construction): the k-th curvature basis function is d_k - d_{K-1} with
// d_k(t) = [(t - xi_k)_+^3 - (t - xi_K)_+^3] / (xi_K - xi_k).
double natural_spline_d(double t, double knot, double last_knot) {
    const auto cube_plus = [](double v) { return v > 0.0 ? v * v * v : 0.0; };
    return (cube_plus(t - knot) - cube_plus(t - last_knot)) / (last_knot - knot);
}

double example1_curve(double t) {
    constexpr double knots[5] = {0.0, 0.2, 0.6, 0.7, 1.0};
    constexpr double coeffs[5] = {20.0, 4.0, 6.0, 11.0, 6.0};
    const double d_last = natural_spline_d(t, knots[3], knots[4]);
    double f = coeffs[0] + coeffs[1] * t;
    for (int k = 0; k < 3; ++k)
        f += coeffs[2 + k] * (natural_spline_d(t, knots[k], knots[4]) - d_last);
    return f;
}

} // namespace

double true_function(int id, double t) {
    const ExampleSpec ex = ExampleSpec::by_id(id);
    if (t < ex.domain_lo || t > ex.domain_hi)
        throw DomainError("evaluation point outside the example domain");
    switch (id) {
        case 1: return example1_curve(t);
        case 2: return std::sin(t) + 2.0 * std::exp(-30.0 * t * t);
        default: {
            constexpr double eps = 0.125;
            return std::sqrt(t * (1.0 - t)) *
                   std::sin(2.0 * std::numbers::pi * (1.0 + eps) / (t + eps));
        }
    }
}

Dataset gen_dataset(const ExampleSpec& ex, std::size_t rep_index, const RngStream& master) {
    RngStream noise = master.split(static_cast<std::uint64_t>(ex.id)).split(rep_index).split(0);
    Dataset d;
    d.t.resize(ex.grid_size);
    d.f_true.resize(ex.grid_size);
    d.y.resize(ex.grid_size);
    for (std::size_t i = 0; i < ex.grid_size; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(ex.grid_size - 1);
        d.t[i] = ex.domain_lo + (ex.domain_hi - ex.domain_lo) * u;
        d.f_true[i] = true_function(ex.id, d.t[i]);
        d.y[i] = d.f_true[i] + ex.noise_sd * noise.normal();
    }
    return d;
}

double mse(std::span<const double> fhat, std::span<const double> ftrue) {
    if (fhat.size() != ftrue.size())
        throw InputError("mse: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < fhat.size(); ++i) {
        const double e = fhat[i] - ftrue[i];
        s += e * e;
    }
    return s / static_cast<double>(fhat.size());
}

ModelSpec benchmark_model(Method method, int example_id, std::size_t iterations,
                          std::size_t burnin) {
    ModelSpec spec;
    spec.iterations = iterations;
    spec.burnin = burnin;
    switch (method) {
        case Method::Oss:
            spec.variant = Variant::Global;
            break;
        case Method::BassV1:
            spec.variant = Variant::AdaptiveSde1; // full-rank basis (m = n)
            break;
        case Method::BassV2:
            spec.variant = Variant::AdaptiveSde2;
            spec.nu_basis_size = example_id == 1 ? 3 : example_id == 2 ? 5 : 10;
            break;
    }
    return spec;
}

BenchmarkReport run_benchmark(const BenchmarkRequest& req) {
    if (req.replications < 2)
        throw InputError("benchmark needs at least 2 replications");
    if (req.examples.empty() || req.methods.empty())
        throw InputError("benchmark needs at least one example and one method");

    const RngStream master(req.seed);
    const std::size_t n_ex = req.examples.size();
    const std::size_t n_me = req.methods.size();
    const std::size_t reps = req.replications;

    // One slot per (example, method, replication); NaN marks a failed chain.
    std::vector<double> mse_slots(n_ex * n_me * reps,
                                  std::numeric_limits<double>::quiet_NaN());
    std::vector<double> time_slots(n_ex * n_me * reps, 0.0);

    const std::size_t n_tasks = n_ex * reps;
    std::atomic<std::size_t> next_task{0};

    const auto worker = [&] {
        for (;;) {
            const std::size_t task = next_task.fetch_add(1);
            if (task >= n_tasks)
                return;
            const std::size_t ei = task / reps;
            const std::size_t rep = task % reps;
            const ExampleSpec ex = ExampleSpec::by_id(req.examples[ei]);
            const Dataset data = gen_dataset(ex, rep, master);

            for (std::size_t mi = 0; mi < n_me; ++mi) {
                const std::size_t slot = (ei * n_me + mi) * reps + rep;
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    const ModelSpec spec = benchmark_model(req.methods[mi], ex.id,
                                                           req.iterations, req.burnin);
                    const ModelWorkspace ws = build_workspace(spec, data.t, data.y);
                    RngStream chain = master.split(static_cast<std::uint64_t>(ex.id))
                                          .split(rep)
                                          .split(1 + mi);
                    const Draws draws = run_chain(ws, chain);

                    std::vector<double> fhat(ws.n_knots(), 0.0);
                    for (const auto& w : draws.w)
                        for (std::size_t j = 0; j < fhat.size(); ++j)
                            fhat[j] += w[j];
                    for (double& v : fhat)
                        v /= static_cast<double>(draws.w.size());
                    mse_slots[slot] = mse(fhat, data.f_true);
                } catch (const std::exception&) {
                    // failed replication: slot stays NaN and is counted below
                }
                const auto t1 = std::chrono::steady_clock::now();
                time_slots[slot] = std::chrono::duration<double>(t1 - t0).count();
            }
        }
    };

    std::size_t jobs = req.jobs != 0 ? req.jobs : std::thread::hardware_concurrency();
    jobs = std::max<std::size_t>(1, std::min(jobs, n_tasks));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (std::size_t i = 0; i < jobs; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    BenchmarkReport report;
    for (std::size_t ei = 0; ei < n_ex; ++ei) {
        for (std::size_t mi = 0; mi < n_me; ++mi) {
            BenchmarkRow row;
            row.example = req.examples[ei];
            row.method = req.methods[mi];
            row.reps = reps;
            std::vector<double> ok;
            double seconds = 0.0;
            for (std::size_t rep = 0; rep < reps; ++rep) {
                const std::size_t slot = (ei * n_me + mi) * reps + rep;
                if (std::isnan(mse_slots[slot]))
                    ++row.failures;
                else
                    ok.push_back(mse_slots[slot]);
                seconds += time_slots[slot];
            }
            if (!ok.empty()) {
                row.median_mse = quantile(ok, 0.5);
                row.q1_mse = quantile(ok, 0.25);
                row.q3_mse = quantile(ok, 0.75);
            } else {
                row.median_mse = row.q1_mse = row.q3_mse =
                    std::numeric_limits<double>::quiet_NaN();
            }
            row.wall_seconds = req.measure_time ? seconds : 0.0;
            report.rows.push_back(row);
        }
    }
    return report;
}

} // namespace bass
