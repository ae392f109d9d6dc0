#pragma once

#include "bass/banded_matrix.hpp"
#include "bass/rng.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bass {

/// Lower-triangular banded Cholesky factor L with L L' = A, same
/// half-bandwidth as A. Factorization and solves are O(n p^2).
class BandedCholesky {
public:
    BandedCholesky(std::size_t dim, std::size_t half_bandwidth)
        : dim_(dim), p_(half_bandwidth), data_(dim * (half_bandwidth + 1), 0.0) {}

    std::size_t dim() const { return dim_; }
    std::size_t half_bandwidth() const { return p_; }

    /// L[i+k, i], k = 0..p.
    double band(std::size_t k, std::size_t i) const { return data_[i * (p_ + 1) + k]; }
    double& band(std::size_t k, std::size_t i) { return data_[i * (p_ + 1) + k]; }

    /// Solves L y = rhs.
    std::vector<double> forward_solve(std::span<const double> rhs) const;

    /// Solves L' x = rhs.
    std::vector<double> back_solve(std::span<const double> rhs) const;

private:
    std::size_t dim_;
    std::size_t p_;
    std::vector<double> data_;
};

/// Gaussian in canonical form: N(P^{-1} b, P^{-1}) for a strictly positive
/// definite banded precision P.
struct CanonicalGaussian {
    BandedSymmetricMatrix precision;
    std::vector<double> b;
};

/// Throws FactorizationError (carrying the pivot index) when a pivot is
/// non-finite or <= rel_tol x max diagonal. The 1e-12 default
/// deterministically separates intrinsic (rank-deficient) matrices from PD
/// ones; callers that factor matrices which are PD by construction but can
/// be badly conditioned (posterior precisions on the delta-lambda ridge)
/// pass a smaller tolerance.
BandedCholesky cholesky_banded(const BandedSymmetricMatrix& m, double rel_tol = 1e-12);

/// Solves m x = rhs through the factor (forward then back substitution).
std::vector<double> solve_banded(const BandedCholesky& chol, std::span<const double> rhs);

/// log det(m) = 2 sum_i log L_ii.
double logdet_banded(const BandedCholesky& chol);

/// Exact draw x = mu + L'^{-1} z with mu = P^{-1} b; never forms a dense
/// covariance.
std::vector<double> sample_canonical(const CanonicalGaussian& g, RngStream& rng);

/// Same draw against a pre-computed factor of the precision.
std::vector<double> sample_canonical(const BandedCholesky& chol, std::span<const double> b,
                                     RngStream& rng);

} // namespace bass
