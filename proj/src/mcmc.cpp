#include "bass/mcmc.hpp"

#include "bass/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bass {

namespace {

// The log-smoothing field is used through exp(nu) only inside [-30, 30]:
// the link saturates there, bounding the smoothing ratio at e^60 and keeping
// every precision assembly inside double range. Targets, proposals and
// matrix construction all apply the same clamp, so the sampler is exact for
// the saturated model (indistinguishable from the unbounded one anywhere a
// data set can identify).
constexpr double kNuClamp = 30.0;
constexpr double kModeTol = 1e-6; // Newton-Raphson convergence, max-abs change
constexpr std::size_t kModeMaxIter = 50;

double clamp_nu(double nu) { return std::clamp(nu, -kNuClamp, kNuClamp); }

std::vector<double> lambda_from_nu(std::span<const double> nu) {
    std::vector<double> lambda(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i)
        lambda[i] = std::exp(0.5 * clamp_nu(nu[i]));
    return lambda;
}

void validate_spec(const ModelSpec& spec) {
    if (!(spec.a_tau > 0 && spec.b_tau > 0 && spec.a_delta > 0 && spec.b_delta > 0 &&
          spec.a_eta > 0 && spec.b_eta > 0))
        throw InputError("hyperprior constants must be positive");
    if (spec.iterations == 0 || spec.burnin >= spec.iterations)
        throw InputError("burn-in must be smaller than the iteration count");
    if (spec.thinning == 0)
        throw InputError("thinning must be at least 1");
    if (spec.kappa < 0)
        throw DomainError("kappa must be nonnegative");
    if (spec.regular_knots != 0 && spec.regular_knots < 4)
        throw InputError("a regular knot grid needs at least 4 knots");
}

} // namespace

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Global: return "oss";
        case Variant::AdaptiveSde1: return "bass1";
        case Variant::AdaptiveSde2: return "bass2";
    }
    return "?";
}

SecondDiffs second_diffs(std::span<const double> w, const Grid& grid) {
    const std::size_t n = grid.size();
    if (w.size() != n)
        throw InputError("second_diffs: length mismatch");
    const DiagonalMatrix bt = build_Btilde(grid);
    SecondDiffs out;
    out.wtilde.assign(n, 0.0);
    out.s.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = grid.spacing(i - 1);
        const double hr = grid.spacing(i);
        const double wt = w[i - 1] / hl - (1.0 / hl + 1.0 / hr) * w[i] + w[i + 1] / hr;
        out.wtilde[i] = wt;
        out.s[i] = wt * wt / bt.diag[i];
    }
    return out;
}

TaylorCoeffs gamma_taylor_coeffs(std::span<const double> nu0, std::span<const double> s,
                                 double delta) {
    if (nu0.size() != s.size())
        throw InputError("gamma_taylor_coeffs: length mismatch");
    if (!(delta > 0))
        throw DomainError("gamma_taylor_coeffs: delta must be positive");
    const std::size_t n = nu0.size();
    TaylorCoeffs tc;
    tc.b.assign(n, 0.0);
    tc.c.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double v = clamp_nu(nu0[i]);
        const double e = std::exp(v);
        tc.b[i] = 0.5 - 0.5 * delta * e * (1.0 - v) * s[i];
        tc.c[i] = 0.5 * delta * e * s[i];
    }
    return tc;
}

double log_target_gamma(std::span<const double> gamma, std::span<const double> s, double delta,
                        double eta, const BandedSymmetricMatrix& R,
                        const InterpolationMatrix& omega) {
    const std::vector<double> nu = omega.apply(gamma);
    double lik = 0.0;
    for (std::size_t i = 1; i + 1 < nu.size(); ++i) {
        const double v = clamp_nu(nu[i]);
        lik += 0.5 * v - 0.5 * delta * std::exp(v) * s[i];
    }
    const double value = lik - 0.5 * eta * quad_form(R, gamma);
    return std::isfinite(value) ? value : -std::numeric_limits<double>::infinity();
}

namespace {

// eta R + Omega' diag(c) Omega; the proposal precision of the gamma step.
BandedSymmetricMatrix proposal_precision(double eta, const BandedSymmetricMatrix& R,
                                         const InterpolationMatrix& omega,
                                         std::span<const double> c) {
    BandedSymmetricMatrix P = R;
    P.scale(eta);
    return P.add_scaled(omega.normal_matrix(c), 1.0);
}

} // namespace

GammaMode find_gamma_mode(std::span<const double> gamma_init, std::span<const double> s,
                          double delta, double eta, const BandedSymmetricMatrix& R,
                          const InterpolationMatrix& omega) {
    GammaMode mode;
    mode.gamma.assign(gamma_init.begin(), gamma_init.end());
    for (std::size_t it = 0; it < kModeMaxIter; ++it) {
        const std::vector<double> nu = omega.apply(mode.gamma);
        const TaylorCoeffs tc = gamma_taylor_coeffs(nu, s, delta);
        const BandedSymmetricMatrix P = proposal_precision(eta, R, omega, tc.c);
        std::vector<double> next;
        try {
            next = solve_banded(cholesky_banded(P), omega.apply_transpose(tc.b));
        } catch (const FactorizationError&) {
            mode.converged = false;
            return mode;
        }
        double change = 0.0;
        for (std::size_t k = 0; k < next.size(); ++k)
            change = std::max(change, std::abs(next[k] - mode.gamma[k]));
        mode.gamma = std::move(next);
        mode.iterations = it + 1;
        if (change < kModeTol) {
            mode.converged = true;
            return mode;
        }
    }
    mode.converged = false;
    return mode;
}

GammaStepResult mh_update_gamma(std::vector<double>& gamma, std::span<const double> s,
                                double delta, double eta, const BandedSymmetricMatrix& R,
                                const InterpolationMatrix& omega, RngStream& rng) {
    GammaStepResult result;

    const GammaMode mode = find_gamma_mode(gamma, s, delta, eta, R, omega);
    if (!mode.converged)
        return result;

    const std::vector<double> nu0 = omega.apply(mode.gamma);
    const TaylorCoeffs tc = gamma_taylor_coeffs(nu0, s, delta);
    const BandedSymmetricMatrix P = proposal_precision(eta, R, omega, tc.c);
    const std::vector<double> canon_b = omega.apply_transpose(tc.b);

    BandedCholesky chol(0, 0);
    try {
        chol = cholesky_banded(P);
    } catch (const FactorizationError&) {
        return result;
    }
    result.proposed = true;

    const std::vector<double> proposal = sample_canonical(chol, canon_b, rng);

    // Unnormalized proposal log-density; the Gaussian normalizer cancels in
    // the ratio because both evaluations share the mode.
    const auto log_proposal = [&](std::span<const double> x) {
        return -0.5 * quad_form(P, x) +
               std::inner_product(canon_b.begin(), canon_b.end(), x.begin(), 0.0);
    };

    const double log_ratio = log_target_gamma(proposal, s, delta, eta, R, omega) -
                             log_target_gamma(gamma, s, delta, eta, R, omega) +
                             log_proposal(gamma) - log_proposal(proposal);
    result.log_accept_ratio = log_ratio;

    if (std::log(rng.uniform01()) < log_ratio) {
        gamma = proposal;
        result.accepted = true;
    }
    return result;
}

std::vector<double> sample_w(const InterpolationMatrix& psi, std::span<const double> y,
                             std::span<const double> rho, double tau, double delta,
                             const BandedSymmetricMatrix& q_lambda, RngStream& rng) {
    if (y.size() != psi.rows() || rho.size() != psi.rows())
        throw InputError("sample_w: observation length mismatch");
    BandedSymmetricMatrix precision = q_lambda;
    precision.scale(delta);
    precision = precision.add_scaled(psi.normal_matrix(rho), tau);

    std::vector<double> b = psi.weighted_transpose_apply(rho, y);
    for (double& v : b)
        v *= tau;
    // PD by construction (tau > 0 anchors the null space of Q_lambda), so
    // pivots only vanish at true double-precision breakdown, not at the
    // intrinsic-detection threshold.
    const BandedCholesky chol = cholesky_banded(precision, 1e-15);
    std::vector<double> draw = sample_canonical(chol, b, rng);
    for (std::size_t i = 0; i < draw.size(); ++i) {
        if (!std::isfinite(draw[i]))
            throw FactorizationError("spline posterior solve lost precision", i);
    }
    return draw;
}

double sample_tau(std::span<const double> residuals, std::span<const double> rho, double a_tau,
                  double b_tau, RngStream& rng) {
    if (residuals.size() != rho.size())
        throw InputError("sample_tau: length mismatch");
    double ss = 0.0;
    for (std::size_t i = 0; i < residuals.size(); ++i)
        ss += rho[i] * residuals[i] * residuals[i];
    return rng.gamma(0.5 * static_cast<double>(residuals.size()) + a_tau, 0.5 * ss + b_tau);
}

double sample_delta(std::size_t n_knots, double w_quad_form, double a_delta, double b_delta,
                    RngStream& rng) {
    const double shape = 0.5 * static_cast<double>(n_knots) - 1.0 + a_delta;
    return rng.gamma(shape, 0.5 * std::max(w_quad_form, 0.0) + b_delta);
}

double sample_eta(std::size_t m_nu, double gamma_quad_form, double a_eta, double b_eta,
                  RngStream& rng) {
    const double shape = 0.5 * static_cast<double>(m_nu) + a_eta;
    return rng.gamma(shape, 0.5 * std::max(gamma_quad_form, 0.0) + b_eta);
}

std::vector<double> sample_rho(std::span<const double> residuals, double tau, RngStream& rng) {
    std::vector<double> rho(residuals.size());
    for (std::size_t i = 0; i < residuals.size(); ++i)
        rho[i] = rng.gamma(1.0, 0.5 + 0.5 * tau * residuals[i] * residuals[i]);
    return rho;
}

ModelWorkspace build_workspace(const ModelSpec& spec, std::span<const double> t,
                               std::span<const double> y) {
    validate_spec(spec);
    if (t.size() != y.size())
        throw InputError("t and y must have the same length");
    for (double v : y)
        if (!std::isfinite(v))
            throw InputError("non-finite observation");

    Grid grid = [&] {
        if (spec.regular_knots == 0)
            return build_grid(t);
        std::vector<double> finite(t.begin(), t.end());
        for (double v : finite)
            if (!std::isfinite(v))
                throw InputError("non-finite knot location");
        const auto [lo, hi] = std::minmax_element(finite.begin(), finite.end());
        if (!(*hi > *lo))
            throw DegenerateGridError("regular knot grid needs a positive data extent");
        const std::size_t m = spec.regular_knots;
        std::vector<double> knots(m);
        for (std::size_t k = 0; k < m; ++k)
            knots[k] = *lo + (*hi - *lo) * static_cast<double>(k) / static_cast<double>(m - 1);
        return Grid::from_sorted_knots(std::move(knots));
    }();

    const std::size_t n = grid.size();

    ModelSpec resolved = spec;
    if (resolved.kappa == 0.0)
        resolved.kappa = 2.0 / grid.span_length();
    if (resolved.nu_basis_size == 0)
        resolved.nu_basis_size =
            spec.variant == Variant::AdaptiveSde2 ? std::min<std::size_t>(10, n) : n;
    if (resolved.nu_basis_size < 2 || resolved.nu_basis_size > n)
        throw InputError("nu basis size must lie in [2, number of knots]");

    // Subknots at equally spaced quantiles (order statistics) of the knot set.
    const std::size_t m = resolved.nu_basis_size;
    std::vector<double> subknots(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double pos =
            static_cast<double>(k) * static_cast<double>(n - 1) / static_cast<double>(m - 1);
        subknots[k] = grid.knot(static_cast<std::size_t>(std::llround(pos)));
    }
    Grid nu_grid = Grid::from_sorted_knots(std::move(subknots));

    InterpolationMatrix psi = build_interpolation(t, grid);
    InterpolationMatrix omega = build_interpolation(grid.knots(), nu_grid);
    BandedSymmetricMatrix r = build_R(nu_grid, resolved.kappa);
    DiagonalMatrix btilde = build_Btilde(grid);
    BandedSymmetricMatrix q_global = build_Q_global(grid);

    return ModelWorkspace{std::move(resolved),
                          std::move(grid),
                          std::vector<double>(t.begin(), t.end()),
                          std::vector<double>(y.begin(), y.end()),
                          std::move(psi),
                          std::move(btilde),
                          std::move(q_global),
                          std::move(nu_grid),
                          std::move(omega),
                          std::move(r)};
}

namespace {

std::vector<double> initial_weights(const ModelWorkspace& ws) {
    const std::size_t n = ws.n_knots();
    if (ws.spec.regular_knots == 0) {
        // Knots sit at the distinct data locations: average replicates.
        std::vector<double> sum(n, 0.0);
        std::vector<double> count(n, 0.0);
        for (std::size_t r = 0; r < ws.psi.rows(); ++r) {
            const std::size_t j =
                ws.psi.left_weight(r) >= 0.5 ? ws.psi.left_col(r) : ws.psi.left_col(r) + 1;
            sum[j] += ws.data_y[r];
            count[j] += 1.0;
        }
        std::vector<double> w(n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            w[j] = count[j] > 0 ? sum[j] / count[j] : 0.0;
        return w;
    }
    // Least-squares line through the data, evaluated at the knots.
    const std::size_t N = ws.n_obs();
    double mt = 0.0, my = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        mt += ws.data_t[i];
        my += ws.data_y[i];
    }
    mt /= static_cast<double>(N);
    my /= static_cast<double>(N);
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        stt += (ws.data_t[i] - mt) * (ws.data_t[i] - mt);
        sty += (ws.data_t[i] - mt) * (ws.data_y[i] - my);
    }
    const double slope = stt > 0 ? sty / stt : 0.0;
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j)
        w[j] = my + slope * (ws.grid.knot(j) - mt);
    return w;
}

double sample_variance(std::span<const double> y) {
    const double n = static_cast<double>(y.size());
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : y)
        ss += (v - mean) * (v - mean);
    return y.size() > 1 ? ss / (n - 1.0) : 1.0;
}

BandedSymmetricMatrix build_q_lambda(const ModelWorkspace& ws, std::span<const double> nu) {
    switch (ws.spec.variant) {
        case Variant::Global:
            return ws.q_global;
        case Variant::AdaptiveSde1:
            return build_Q_sde1(ws.grid, lambda_from_nu(nu));
        case Variant::AdaptiveSde2:
            return build_Q_sde2(ws.grid, lambda_from_nu(nu));
    }
    throw InputError("unknown variant");
}

// Log full conditional of gamma for SDE II: the quadratic form uses
// u = Lambda w, and the normalizer contributes nu_i/2 over all knots.
double log_target_gamma_sde2(std::span<const double> gamma, std::span<const double> w,
                             double delta, double eta, const ModelWorkspace& ws) {
    const std::vector<double> nu = ws.omega.apply(gamma);
    std::vector<double> u(nu.size());
    double sum_nu = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        const double v = clamp_nu(nu[i]);
        sum_nu += v;
        u[i] = std::exp(0.5 * v) * w[i];
    }
    const double value =
        0.5 * sum_nu - 0.5 * delta * quad_form(ws.q_global, u) - 0.5 * eta * quad_form(ws.r, gamma);
    return std::isfinite(value) ? value : -std::numeric_limits<double>::infinity();
}

// Joint rescaling move along the delta-exp(nu) ridge: gamma shifts by c on
// every subknot while delta scales by e^{-c}. Away from the nu clamp the
// w-likelihood is invariant for SDE I, so essentially only the priors and
// the Jacobian e^{-c} enter; the weakly identified level then mixes far
// faster than through the Gibbs steps alone. Ratios are evaluated from the
// full conditionals so the move stays exact when the clamp saturates.
bool level_rescale_move(ChainState& state, const ModelWorkspace& ws, std::span<const double> s,
                        RngStream& rng) {
    const double c = rng.normal();
    const double delta_new = state.delta * std::exp(-c);

    std::vector<double> gamma_new(state.gamma);
    for (double& g : gamma_new)
        g += c;

    const ModelSpec& spec = ws.spec;
    double log_ratio;
    if (spec.variant == Variant::AdaptiveSde1)
        log_ratio = log_target_gamma(gamma_new, s, delta_new, state.eta, ws.r, ws.omega) -
                    log_target_gamma(state.gamma, s, state.delta, state.eta, ws.r, ws.omega);
    else
        log_ratio = log_target_gamma_sde2(gamma_new, state.w, delta_new, state.eta, ws) -
                    log_target_gamma_sde2(state.gamma, state.w, state.delta, state.eta, ws);
    // (n-2)/2 log delta from the generalized determinant, the Gamma prior
    // on delta, and the Jacobian of delta -> delta e^{-c}.
    const double half_rank = 0.5 * (static_cast<double>(ws.n_knots()) - 2.0);
    log_ratio += (half_rank + spec.a_delta - 1.0) * (-c) -
                 spec.b_delta * (delta_new - state.delta) - c;

    if (std::log(rng.uniform01()) < log_ratio) {
        state.gamma = std::move(gamma_new);
        state.delta = delta_new;
        return true;
    }
    return false;
}

} // namespace

Draws run_chain(const ModelWorkspace& ws, RngStream& rng) {
    const ModelSpec& spec = ws.spec;
    const std::size_t n = ws.n_knots();
    const std::size_t m = ws.m_nu();
    const bool adaptive = spec.variant != Variant::Global;

    ChainState state;
    state.w = initial_weights(ws);
    state.gamma.assign(adaptive ? m : 0, 0.0);
    state.tau = 1.0 / std::max(sample_variance(ws.data_y), 1e-12);
    state.delta = 1.0;
    state.eta = 1.0;
    state.rho.assign(ws.n_obs(), 1.0);

    std::vector<double> nu(n, 0.0);
    BandedSymmetricMatrix q_lambda = ws.q_global;

    Draws draws;
    draws.n_knots = n;
    draws.m_nu = adaptive ? m : 0;
    const std::size_t retained = (spec.iterations - spec.burnin) / spec.thinning;
    draws.w.reserve(retained);
    if (adaptive)
        draws.gamma.reserve(retained);
    draws.tau.reserve(retained);
    draws.delta.reserve(retained);
    draws.eta.reserve(retained);

    // Single-site random-walk state for SDE II, adapted during burn-in
    // toward 0.44 acceptance.
    std::vector<double> rw_log_step(spec.variant == Variant::AdaptiveSde2 ? m : 0,
                                    std::log(0.5));
    std::vector<std::size_t> rw_batch_accepts(rw_log_step.size(), 0);
    constexpr std::size_t kAdaptBatch = 50;
    std::size_t adapt_batches = 0;

    for (std::size_t sweep = 1; sweep <= spec.iterations; ++sweep) {
        try {
            state.w = sample_w(ws.psi, ws.data_y, state.rho, state.tau, state.delta, q_lambda,
                               rng);
        } catch (const FactorizationError& e) {
            // On the first sweep the posterior precision is tau Psi'Psi +
            // delta Q with moderate scales, so failure means the data cannot
            // identify the spline. Later failures are transient conditioning
            // spikes on the delta-lambda ridge; keeping the current w lets
            // the chain recover.
            if (sweep == 1)
                throw ChainError(std::string("spline update failed: ") + e.what(), sweep);
            ++draws.w_update_skips;
        }

        std::vector<double> residuals = ws.psi.apply(state.w);
        for (std::size_t i = 0; i < residuals.size(); ++i)
            residuals[i] = ws.data_y[i] - residuals[i];

        state.tau = sample_tau(residuals, state.rho, spec.a_tau, spec.b_tau, rng);

        if (spec.errors == ErrorFamily::Cauchy)
            state.rho = sample_rho(residuals, state.tau, rng);

        SecondDiffs sd;
        if (spec.variant == Variant::AdaptiveSde1) {
            sd = second_diffs(state.w, ws.grid);
            const GammaStepResult step = mh_update_gamma(state.gamma, sd.s, state.delta,
                                                         state.eta, ws.r, ws.omega, rng);
            if (step.proposed) {
                ++draws.gamma_sweeps;
                if (step.accepted) {
                    ++draws.gamma_accepted;
                    nu = ws.omega.apply(state.gamma);
                    q_lambda = build_q_lambda(ws, nu);
                }
            } else {
                ++draws.gamma_failures;
            }
        } else if (spec.variant == Variant::AdaptiveSde2) {
            double current = log_target_gamma_sde2(state.gamma, state.w, state.delta, state.eta,
                                                   ws);
            bool any_accepted = false;
            for (std::size_t k = 0; k < m; ++k) {
                const double old = state.gamma[k];
                state.gamma[k] = old + std::exp(rw_log_step[k]) * rng.normal();
                const double proposed = log_target_gamma_sde2(state.gamma, state.w, state.delta,
                                                              state.eta, ws);
                ++draws.gamma_sweeps;
                if (std::log(rng.uniform01()) < proposed - current) {
                    current = proposed;
                    ++draws.gamma_accepted;
                    ++rw_batch_accepts[k];
                    any_accepted = true;
                } else {
                    state.gamma[k] = old;
                }
            }
            if (any_accepted) {
                nu = ws.omega.apply(state.gamma);
                q_lambda = build_q_lambda(ws, nu);
            }
            if (sweep <= spec.burnin && sweep % kAdaptBatch == 0) {
                ++adapt_batches;
                const double step_change =
                    std::min(0.1, 1.0 / std::sqrt(static_cast<double>(adapt_batches)));
                for (std::size_t k = 0; k < m; ++k) {
                    const double rate = static_cast<double>(rw_batch_accepts[k]) /
                                        static_cast<double>(kAdaptBatch);
                    rw_log_step[k] += rate > 0.44 ? step_change : -step_change;
                    rw_log_step[k] = std::clamp(rw_log_step[k], std::log(1e-3), std::log(1e2));
                    rw_batch_accepts[k] = 0;
                }
            }
        }

        if (adaptive && level_rescale_move(state, ws, sd.s, rng)) {
            nu = ws.omega.apply(state.gamma);
            q_lambda = build_q_lambda(ws, nu);
        }

        state.delta = sample_delta(n, quad_form(q_lambda, state.w), spec.a_delta, spec.b_delta,
                                   rng);
        if (adaptive)
            state.eta = sample_eta(m, quad_form(ws.r, state.gamma), spec.a_eta, spec.b_eta, rng);

        if (sweep > spec.burnin && (sweep - spec.burnin) % spec.thinning == 0) {
            draws.w.push_back(state.w);
            if (adaptive)
                draws.gamma.push_back(state.gamma);
            draws.tau.push_back(state.tau);
            draws.delta.push_back(state.delta);
            draws.eta.push_back(state.eta);
        }
    }
    return draws;
}

Draws run_chain(const ModelSpec& spec, std::span<const double> t, std::span<const double> y) {
    const ModelWorkspace ws = build_workspace(spec, t, y);
    RngStream rng(spec.seed);
    return run_chain(ws, rng);
}

double quantile(std::vector<double> values, double p) {
    if (values.empty())
        throw InputError("quantile of empty sample");
    std::sort(values.begin(), values.end());
    const double h = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size())
        return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

namespace {

IntervalSummary summarize_scalar(const std::vector<double>& draws) {
    IntervalSummary s;
    s.mean = std::accumulate(draws.begin(), draws.end(), 0.0) /
             static_cast<double>(draws.size());
    s.lo95 = quantile(draws, 0.025);
    s.hi95 = quantile(draws, 0.975);
    return s;
}

} // namespace

FitSummary summarize(const Draws& draws, const InterpolationMatrix& psi_eval,
                     const InterpolationMatrix& omega_eval) {
    const std::size_t n_draws = draws.w.size();
    if (n_draws < 100)
        throw InputError("summarize needs at least 100 retained draws");
    if (psi_eval.cols() != draws.n_knots)
        throw InputError("summarize: psi_eval column count mismatch");

    const std::size_t n_eval = psi_eval.rows();
    FitSummary out;
    out.f_mean.assign(n_eval, 0.0);
    out.f_lo95.assign(n_eval, 0.0);
    out.f_hi95.assign(n_eval, 0.0);
    out.lambda_mean.assign(n_eval, 0.0);

    std::vector<std::vector<double>> f_draws(n_eval, std::vector<double>(n_draws));
    for (std::size_t d = 0; d < n_draws; ++d) {
        const std::vector<double> f = psi_eval.apply(draws.w[d]);
        for (std::size_t i = 0; i < n_eval; ++i)
            f_draws[i][d] = f[i];
    }
    for (std::size_t i = 0; i < n_eval; ++i) {
        out.f_mean[i] = std::accumulate(f_draws[i].begin(), f_draws[i].end(), 0.0) /
                        static_cast<double>(n_draws);
        out.f_lo95[i] = quantile(f_draws[i], 0.025);
        out.f_hi95[i] = quantile(f_draws[i], 0.975);
    }

    if (draws.gamma.empty()) {
        std::fill(out.lambda_mean.begin(), out.lambda_mean.end(), 1.0);
    } else {
        if (omega_eval.cols() != draws.m_nu)
            throw InputError("summarize: omega_eval column count mismatch");
        for (std::size_t d = 0; d < n_draws; ++d) {
            const std::vector<double> nu = omega_eval.apply(draws.gamma[d]);
            for (std::size_t i = 0; i < n_eval; ++i)
                out.lambda_mean[i] += std::exp(nu[i]);
        }
        for (double& v : out.lambda_mean)
            v /= static_cast<double>(n_draws);
    }

    out.tau = summarize_scalar(draws.tau);
    out.delta = summarize_scalar(draws.delta);
    out.eta = summarize_scalar(draws.eta);
    out.acceptance_gamma = draws.acceptance_gamma();
    return out;
}

} // namespace bass
