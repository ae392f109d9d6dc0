#include "bass/gmrf_linalg.hpp"

#include "bass/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bass {

std::vector<double> BandedCholesky::forward_solve(std::span<const double> rhs) const {
    if (rhs.size() != dim_)
        throw InputError("forward_solve: dimension mismatch");
    std::vector<double> y(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        double s = rhs[i];
        const std::size_t k0 = i > p_ ? i - p_ : 0;
        for (std::size_t k = k0; k < i; ++k)
            s -= band(i - k, k) * y[k];
        y[i] = s / band(0, i);
    }
    return y;
}

std::vector<double> BandedCholesky::back_solve(std::span<const double> rhs) const {
    if (rhs.size() != dim_)
        throw InputError("back_solve: dimension mismatch");
    std::vector<double> x(dim_);
    for (std::size_t ii = dim_; ii-- > 0;) {
        double s = rhs[ii];
        const std::size_t jmax = std::min(ii + p_, dim_ - 1);
        for (std::size_t j = ii + 1; j <= jmax; ++j)
            s -= band(j - ii, ii) * x[j];
        x[ii] = s / band(0, ii);
    }
    return x;
}

BandedCholesky cholesky_banded(const BandedSymmetricMatrix& m, double rel_tol) {
    const std::size_t n = m.dim();
    const std::size_t p = m.half_bandwidth();

    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        max_diag = std::max(max_diag, std::abs(m.band(0, i)));
    const double pivot_tol = rel_tol * max_diag;

    BandedCholesky L(n, p);
    for (std::size_t j = 0; j < n; ++j) {
        double d = m.band(0, j);
        const std::size_t k0 = j > p ? j - p : 0;
        for (std::size_t k = k0; k < j; ++k) {
            const double ljk = L.band(j - k, k);
            d -= ljk * ljk;
        }
        if (!std::isfinite(d) || d <= pivot_tol)
            throw FactorizationError("matrix is not positive definite", j);
        const double ljj = std::sqrt(d);
        L.band(0, j) = ljj;

        const std::size_t imax = std::min(j + p, n - 1);
        for (std::size_t i = j + 1; i <= imax; ++i) {
            double s = m.band(i - j, j);
            const std::size_t kk0 = i > p ? i - p : 0;
            for (std::size_t k = std::max(kk0, k0); k < j; ++k)
                s -= L.band(i - k, k) * L.band(j - k, k);
            L.band(i - j, j) = s / ljj;
        }
    }
    return L;
}

std::vector<double> solve_banded(const BandedCholesky& chol, std::span<const double> rhs) {
    return chol.back_solve(chol.forward_solve(rhs));
}

double logdet_banded(const BandedCholesky& chol) {
    double s = 0.0;
    for (std::size_t i = 0; i < chol.dim(); ++i)
        s += std::log(chol.band(0, i));
    return 2.0 * s;
}

std::vector<double> sample_canonical(const BandedCholesky& chol, std::span<const double> b,
                                     RngStream& rng) {
    // x = L'^{-1}(L^{-1} b + z) has mean P^{-1} b and covariance P^{-1}.
    std::vector<double> y = chol.forward_solve(b);
    for (double& v : y)
        v += rng.normal();
    return chol.back_solve(y);
}

std::vector<double> sample_canonical(const CanonicalGaussian& g, RngStream& rng) {
    const BandedCholesky chol = cholesky_banded(g.precision);
    return sample_canonical(chol, g.b, rng);
}

} // namespace bass
