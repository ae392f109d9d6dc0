// Command-line front end: fit spline models to CSV data, run the simulation
// benchmark, or dump the model matrices for inspection.

#include "bass/bench.hpp"
#include "bass/errors.hpp"
#include "bass/fem_matrices.hpp"
#include "bass/io.hpp"
#include "bass/mcmc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitChain = 4;

std::optional<ordered_json> load_config(const std::string& path) {
    if (path.empty())
        return std::nullopt;
    std::ifstream in(path);
    if (!in)
        throw bass::InputError("cannot open config '" + path + "'");
    ordered_json cfg = ordered_json::parse(in, nullptr, true, true);
    if (!cfg.is_object())
        throw bass::InputError("config must be a JSON object");
    return cfg;
}

// Flags win over config values; config wins over defaults.
template <typename T>
void overlay(const std::optional<ordered_json>& cfg, const CLI::Option* opt,
             const std::string& key, T& value) {
    if (!cfg || opt->count() > 0 || !cfg->contains(key))
        return;
    value = cfg->at(key).get<T>();
}

bass::Variant parse_model(const std::string& token) {
    if (token == "oss") return bass::Variant::Global;
    if (token == "bass1") return bass::Variant::AdaptiveSde1;
    if (token == "bass2") return bass::Variant::AdaptiveSde2;
    throw bass::InputError("unknown model '" + token + "' (expected oss, bass1 or bass2)");
}

bass::ErrorFamily parse_errors(const std::string& token) {
    if (token == "gaussian") return bass::ErrorFamily::Gaussian;
    if (token == "cauchy") return bass::ErrorFamily::Cauchy;
    throw bass::InputError("unknown error family '" + token + "'");
}

std::size_t parse_knots_flag(const std::string& token) {
    if (token == "auto")
        return 0;
    std::size_t m = 0;
    try {
        m = static_cast<std::size_t>(std::stoul(token));
    } catch (const std::exception&) {
        throw bass::InputError("--knots expects 'auto' or an integer");
    }
    if (m < 4)
        throw bass::InputError("--knots needs at least 4 knots");
    return m;
}

ordered_json interval_json(const bass::IntervalSummary& s) {
    return ordered_json{{"mean", s.mean}, {"lo95", s.lo95}, {"hi95", s.hi95}};
}

struct FitArgs {
    std::string input;
    std::string output = "fit";
    std::string model = "bass1";
    std::string errors = "gaussian";
    std::string knots = "auto";
    std::uint64_t seed = 0;
    std::size_t iterations = 10000;
    std::size_t burnin = 2000;
    std::size_t thinning = 1;
    std::size_t nu_knots = 0;
    double kappa = 0.0;
    std::string config;
};

int run_fit(const FitArgs& args) {
    bass::ModelSpec spec;
    spec.variant = parse_model(args.model);
    spec.errors = parse_errors(args.errors);
    spec.seed = args.seed;
    spec.iterations = args.iterations;
    spec.burnin = args.burnin;
    spec.thinning = args.thinning;
    spec.nu_basis_size = args.nu_knots;
    spec.kappa = args.kappa;
    spec.regular_knots = parse_knots_flag(args.knots);

    const bass::XyData data = bass::read_xy_csv(args.input);
    const bass::ModelWorkspace ws = bass::build_workspace(spec, data.t, data.y);

    bass::RngStream rng(ws.spec.seed);
    const bass::Draws draws = bass::run_chain(ws, rng);

    const bass::InterpolationMatrix psi_eval =
        bass::build_interpolation(ws.grid.knots(), ws.grid);
    const bass::FitSummary summary = bass::summarize(draws, psi_eval, ws.omega);

    bass::write_file(args.output + ".curve.csv", bass::curve_csv(ws.grid.knots(), summary));

    ordered_json j;
    j["model"] = bass::variant_name(ws.spec.variant);
    j["seed"] = ws.spec.seed;
    j["iterations"] = ws.spec.iterations;
    j["burnin"] = ws.spec.burnin;
    j["acceptance_gamma"] = summary.acceptance_gamma;
    j["tau"] = interval_json(summary.tau);
    j["delta"] = interval_json(summary.delta);
    j["eta"] = interval_json(summary.eta);
    bass::write_file(args.output + ".summary.json", j.dump(2) + "\n");
    return kExitOk;
}

struct SimulateArgs {
    std::vector<int> examples;
    std::string methods = "bass1,bass2,oss";
    std::string output = "benchmark";
    std::size_t reps = 50;
    std::uint64_t seed = 0;
    std::size_t jobs = 0;
    std::size_t iterations = 5000;
    std::size_t burnin = 1000;
    bool timing = false;
};

int run_simulate(const SimulateArgs& args) {
    bass::BenchmarkRequest req;
    if (!args.examples.empty())
        req.examples = args.examples;
    for (int id : req.examples)
        bass::ExampleSpec::by_id(id); // validate before any computation
    req.methods.clear();
    std::string token;
    for (char ch : args.methods + ",") {
        if (ch == ',') {
            if (!token.empty())
                req.methods.push_back(bass::parse_method(token));
            token.clear();
        } else {
            token += ch;
        }
    }
    req.replications = args.reps;
    req.seed = args.seed;
    req.jobs = args.jobs;
    req.iterations = args.iterations;
    req.burnin = args.burnin;
    req.measure_time = args.timing;

    const bass::BenchmarkReport report = bass::run_benchmark(req);
    bass::write_file(args.output + ".csv", bass::benchmark_csv(report));

    ordered_json j;
    j["seed"] = req.seed;
    j["reps"] = req.replications;
    j["iterations"] = req.iterations;
    j["burnin"] = req.burnin;
    j["rows"] = ordered_json::array();
    for (const bass::BenchmarkRow& row : report.rows) {
        ordered_json rj;
        rj["example"] = row.example;
        rj["method"] = bass::method_label(row.method);
        rj["reps"] = row.reps;
        rj["median_mse"] = row.median_mse;
        rj["q1_mse"] = row.q1_mse;
        rj["q3_mse"] = row.q3_mse;
        rj["failures"] = row.failures;
        rj["wall_seconds"] = row.wall_seconds;
        j["rows"].push_back(std::move(rj));
    }
    bass::write_file(args.output + ".json", j.dump(2) + "\n");
    return kExitOk;
}

struct MatricesArgs {
    std::string which;
    std::string grid_path;
    std::string lambda_path;
    std::string output;
    double kappa = 1.0;
};

int run_matrices(const MatricesArgs& args) {
    const bool needs_lambda = args.which == "q1" || args.which == "q2";
    if (needs_lambda && args.lambda_path.empty())
        throw bass::InputError("--lambda is required for q1 and q2");

    const std::vector<double> locations = bass::read_value_lines(args.grid_path);
    const bass::Grid grid = bass::build_grid(locations);
    const std::size_t n = grid.size();

    std::vector<double> lambda;
    if (needs_lambda)
        lambda = bass::read_value_lines(args.lambda_path);

    std::function<double(std::size_t, std::size_t)> entry;
    if (args.which == "h") {
        entry = [h = bass::build_H(grid)](std::size_t i, std::size_t j) {
            return h.entry(i, j);
        };
    } else if (args.which == "b") {
        entry = [b = bass::build_B(grid)](std::size_t i, std::size_t j) {
            return b.entry(i, j);
        };
    } else if (args.which == "btilde") {
        entry = [bt = bass::build_Btilde(grid)](std::size_t i, std::size_t j) {
            return i == j ? bt.diag[i] : 0.0;
        };
    } else if (args.which == "q") {
        entry = [q = bass::build_Q_global(grid)](std::size_t i, std::size_t j) {
            return q.entry(i, j);
        };
    } else if (args.which == "q1") {
        entry = [q = bass::build_Q_sde1(grid, lambda)](std::size_t i, std::size_t j) {
            return q.entry(i, j);
        };
    } else if (args.which == "q2") {
        entry = [q = bass::build_Q_sde2(grid, lambda)](std::size_t i, std::size_t j) {
            return q.entry(i, j);
        };
    } else if (args.which == "r") {
        entry = [r = bass::build_R(grid, args.kappa)](std::size_t i, std::size_t j) {
            return r.entry(i, j);
        };
    } else {
        throw bass::InputError("unknown matrix '" + args.which + "'");
    }

    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j > 0)
                out += ',';
            out += bass::format_double(entry(i, j));
        }
        out += '\n';
    }
    if (args.output.empty())
        std::cout << out;
    else
        bass::write_file(args.output, out);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian adaptive smoothing splines on sparse GMRF precision matrices"};
    app.require_subcommand(1);

    FitArgs fit;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Fit a model to a t,y CSV file");
    fit_cmd->add_option("--input", fit.input, "Input CSV with header t,y")->required();
    auto* fo_output = fit_cmd->add_option("--output", fit.output, "Output stem");
    auto* fo_model = fit_cmd->add_option("--model", fit.model, "oss, bass1 or bass2");
    auto* fo_errors = fit_cmd->add_option("--errors", fit.errors, "gaussian or cauchy");
    auto* fo_seed = fit_cmd->add_option("--seed", fit.seed, "RNG seed");
    auto* fo_iter = fit_cmd->add_option("--iterations", fit.iterations, "MCMC sweeps");
    auto* fo_burn = fit_cmd->add_option("--burnin", fit.burnin, "Burn-in sweeps");
    auto* fo_thin = fit_cmd->add_option("--thin", fit.thinning, "Thinning interval");
    auto* fo_knots = fit_cmd->add_option("--knots", fit.knots, "auto or a regular knot count");
    auto* fo_nuk = fit_cmd->add_option("--nu-knots", fit.nu_knots,
                                       "Log-smoothing subknot count (0 = auto)");
    auto* fo_kappa = fit_cmd->add_option("--kappa", fit.kappa,
                                         "Log-smoothing prior range (0 = auto)");
    fit_cmd->add_option("--config", fit.config, "JSON config file (flags take precedence)");

    SimulateArgs sim;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "Run the simulation benchmark");
    sim_cmd->add_option("--example", sim.examples, "Example ids (default: 1 2 3)");
    sim_cmd->add_option("--methods", sim.methods, "Comma list of bass1,bass2,oss");
    sim_cmd->add_option("--output", sim.output, "Output stem");
    sim_cmd->add_option("--reps", sim.reps, "Replications");
    sim_cmd->add_option("--seed", sim.seed, "Master seed");
    sim_cmd->add_option("--jobs", sim.jobs, "Parallel jobs (0 = all cores)");
    sim_cmd->add_option("--iterations", sim.iterations, "MCMC sweeps per fit");
    sim_cmd->add_option("--burnin", sim.burnin, "Burn-in sweeps per fit");
    sim_cmd->add_flag("--timing", sim.timing,
                      "Write measured wall_seconds (breaks byte-reproducibility)");

    MatricesArgs mat;
    CLI::App* mat_cmd = app.add_subcommand("matrices", "Dump a model matrix as dense CSV");
    mat_cmd->add_option("--which", mat.which, "h, b, btilde, q, q1, q2 or r")->required();
    mat_cmd->add_option("--grid", mat.grid_path, "File with one knot location per line")
        ->required();
    mat_cmd->add_option("--lambda", mat.lambda_path, "File with one lambda value per line");
    mat_cmd->add_option("--kappa", mat.kappa, "Range parameter for r");
    mat_cmd->add_option("--output", mat.output, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (fit_cmd->parsed()) {
            const auto cfg = load_config(fit.config);
            overlay(cfg, fo_output, "output", fit.output);
            overlay(cfg, fo_model, "model", fit.model);
            overlay(cfg, fo_errors, "errors", fit.errors);
            overlay(cfg, fo_seed, "seed", fit.seed);
            overlay(cfg, fo_iter, "iterations", fit.iterations);
            overlay(cfg, fo_burn, "burnin", fit.burnin);
            overlay(cfg, fo_thin, "thin", fit.thinning);
            overlay(cfg, fo_knots, "knots", fit.knots);
            overlay(cfg, fo_nuk, "nu_knots", fit.nu_knots);
            overlay(cfg, fo_kappa, "kappa", fit.kappa);
            return run_fit(fit);
        }
        if (sim_cmd->parsed())
            return run_simulate(sim);
        if (mat_cmd->parsed())
            return run_matrices(mat);
    } catch (const bass::CsvError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const bass::DegenerateGridError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const bass::ChainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitChain;
    } catch (const bass::FactorizationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitChain;
    } catch (const bass::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const bass::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
