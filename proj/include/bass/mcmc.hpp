#pragma once

#include "bass/banded_matrix.hpp"
#include "bass/fem_matrices.hpp"
#include "bass/gmrf_linalg.hpp"
#include "bass/grid.hpp"
#include "bass/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bass {

enum class Variant { Global, AdaptiveSde1, AdaptiveSde2 };
enum class ErrorFamily { Gaussian, Cauchy };

std::string variant_name(Variant v);

struct ModelSpec {
    Variant variant = Variant::AdaptiveSde1;
    ErrorFamily errors = ErrorFamily::Gaussian;

    // Diffuse but proper Gamma(eps, eps) hyperpriors.
    double a_tau = 1e-3, b_tau = 1e-3;
    double a_delta = 1e-3, b_delta = 1e-3;
    double a_eta = 1e-3, b_eta = 1e-3;

    /// Range parameter of the log-smoothing prior; 0 = auto (2 / domain extent).
    double kappa = 0.0;

    /// 0: knots at the distinct data locations. Otherwise a regular grid of
    /// this many knots over [min t, max t].
    std::size_t regular_knots = 0;

    /// Size of the log-smoothing basis; 0 = auto (n for SDE I, min(10, n)
    /// for SDE II).
    std::size_t nu_basis_size = 0;

    std::size_t iterations = 10000;
    std::size_t burnin = 2000;
    std::size_t thinning = 1;
    std::uint64_t seed = 0;
};

/// Current values of one Markov chain.
struct ChainState {
    std::vector<double> w;     // spline weights, one per knot
    std::vector<double> gamma; // log-smoothing weights on the subknot basis
    double tau = 1.0;          // error precision
    double delta = 1.0;        // spline scale
    double eta = 1.0;          // log-smoothing prior scale
    std::vector<double> rho;   // per-observation mixing weights (1 under Gaussian errors)
};

/// Second differences wtilde = H w (zero at both ends) and the penalty
/// contributions s_i = wtilde_i^2 / Btilde_ii, so that
/// sum_i e^{nu_i} s_i = w' Q_lambda w with lambda_i = e^{nu_i / 2}.
struct SecondDiffs {
    std::vector<double> wtilde;
    std::vector<double> s;
};

SecondDiffs second_diffs(std::span<const double> w, const Grid& grid);

/// Quadratic Taylor coefficients of the per-site log target
/// nu_i/2 - delta e^{nu_i} s_i / 2 expanded at nu0:
/// b_i = 1/2 - delta e^{nu0_i} (1 - nu0_i) s_i / 2 and
/// c_i = delta e^{nu0_i} s_i / 2 on interior sites, zero at both ends.
struct TaylorCoeffs {
    std::vector<double> b;
    std::vector<double> c;
};

TaylorCoeffs gamma_taylor_coeffs(std::span<const double> nu0, std::span<const double> s,
                                 double delta);

/// Unnormalized log full conditional of gamma (SDE I):
/// sum_interior(nu_i/2 - delta e^{nu_i} s_i / 2) - eta/2 gamma' R gamma
/// with nu = Omega gamma. Returns -inf on overflow.
double log_target_gamma(std::span<const double> gamma, std::span<const double> s, double delta,
                        double eta, const BandedSymmetricMatrix& R,
                        const InterpolationMatrix& omega);

struct GammaMode {
    std::vector<double> gamma;
    bool converged = false;
    std::size_t iterations = 0;
};

/// Newton-Raphson search for the mode of the gamma full conditional,
/// iterating gamma <- (eta R + Omega' C Omega)^{-1} Omega' b until the
/// max-abs change drops below 1e-6 (at most 50 iterations).
GammaMode find_gamma_mode(std::span<const double> gamma_init, std::span<const double> s,
                          double delta, double eta, const BandedSymmetricMatrix& R,
                          const InterpolationMatrix& omega);

struct GammaStepResult {
    bool proposed = false; // false: mode search or factorization failed, sweep was a no-op
    bool accepted = false;
    double log_accept_ratio = 0.0;
};

/// Independence Metropolis-Hastings update of gamma using the Gaussian
/// approximation built at the mode as proposal. The proposal density is
/// evaluated at the same mode for both current and proposed gamma.
GammaStepResult mh_update_gamma(std::vector<double>& gamma, std::span<const double> s,
                                double delta, double eta, const BandedSymmetricMatrix& R,
                                const InterpolationMatrix& omega, RngStream& rng);

/// Exact draw of the spline weights from N(mu_w, Sigma_w) with
/// Sigma_w^{-1} = tau Psi' diag(rho) Psi + delta Q_lambda and
/// mu_w = tau Sigma_w Psi' diag(rho) y.
std::vector<double> sample_w(const InterpolationMatrix& psi, std::span<const double> y,
                             std::span<const double> rho, double tau, double delta,
                             const BandedSymmetricMatrix& q_lambda, RngStream& rng);

/// Gamma(N/2 + a_tau, sum_i rho_i (y_i - (Psi w)_i)^2 / 2 + b_tau).
double sample_tau(std::span<const double> residuals, std::span<const double> rho, double a_tau,
                  double b_tau, RngStream& rng);

/// Gamma(n/2 - 1 + a_delta, w' Q_lambda w / 2 + b_delta), n = number of knots.
double sample_delta(std::size_t n_knots, double w_quad_form, double a_delta, double b_delta,
                    RngStream& rng);

/// Gamma(m/2 + a_eta, gamma' R gamma / 2 + b_eta), m = subknot count.
double sample_eta(std::size_t m_nu, double gamma_quad_form, double a_eta, double b_eta,
                  RngStream& rng);

/// Cauchy scale-mixture weights: rho_i ~ Gamma(1, 1/2 + tau e_i^2 / 2).
std::vector<double> sample_rho(std::span<const double> residuals, double tau, RngStream& rng);

/// Everything assembled once per fit: knot grid, basis matrices, the
/// log-smoothing subknot machinery, and the resolved spec.
struct ModelWorkspace {
    ModelSpec spec; // kappa / nu_basis_size resolved to concrete values
    Grid grid;
    std::vector<double> data_t;
    std::vector<double> data_y;
    InterpolationMatrix psi;   // observations x knots
    DiagonalMatrix btilde;
    BandedSymmetricMatrix q_global;
    Grid nu_grid;              // subknots for the log-smoothing basis
    InterpolationMatrix omega; // knots x subknots
    BandedSymmetricMatrix r;   // log-smoothing prior precision

    std::size_t n_obs() const { return data_t.size(); }
    std::size_t n_knots() const { return grid.size(); }
    std::size_t m_nu() const { return nu_grid.size(); }
};

ModelWorkspace build_workspace(const ModelSpec& spec, std::span<const double> t,
                               std::span<const double> y);

/// Retained post-burn-in draws plus gamma-step bookkeeping.
struct Draws {
    std::size_t n_knots = 0;
    std::size_t m_nu = 0;
    std::vector<std::vector<double>> w;
    std::vector<std::vector<double>> gamma;
    std::vector<double> tau;
    std::vector<double> delta;
    std::vector<double> eta;
    std::size_t gamma_sweeps = 0;   // sweeps that attempted a gamma update
    std::size_t gamma_accepted = 0;
    std::size_t gamma_failures = 0; // proposal-construction failures (no-op sweeps)
    std::size_t w_update_skips = 0; // transient conditioning spikes in the w update

    double acceptance_gamma() const {
        return gamma_sweeps == 0 ? 0.0
                                 : static_cast<double>(gamma_accepted) /
                                       static_cast<double>(gamma_sweeps);
    }
};

/// Systematic-sweep Gibbs sampler (order w, tau, rho, gamma, delta, eta)
/// with the variant-specific gamma step. Deterministic given the stream.
Draws run_chain(const ModelWorkspace& ws, RngStream& rng);

/// Convenience entry point: assembles the workspace and derives the chain
/// stream from spec.seed.
Draws run_chain(const ModelSpec& spec, std::span<const double> t, std::span<const double> y);

struct IntervalSummary {
    double mean = 0.0;
    double lo95 = 0.0;
    double hi95 = 0.0;
};

struct FitSummary {
    std::vector<double> f_mean;
    std::vector<double> f_lo95;
    std::vector<double> f_hi95;
    std::vector<double> lambda_mean; // posterior mean of exp(nu) at the eval points
    IntervalSummary tau;
    IntervalSummary delta;
    IntervalSummary eta;
    double acceptance_gamma = 0.0;
};

/// Pointwise posterior mean and 2.5/97.5 percentiles of Psi_eval w, and the
/// posterior mean of exp(Omega_eval gamma). Requires >= 100 retained draws.
FitSummary summarize(const Draws& draws, const InterpolationMatrix& psi_eval,
                     const InterpolationMatrix& omega_eval);

/// Empirical quantile with linear interpolation (R type 7).
double quantile(std::vector<double> sorted_or_not, double p);

} // namespace bass
