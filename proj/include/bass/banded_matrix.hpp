#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bass {

/// Symmetric banded matrix, lower bands only, stored as an n x (p+1) panel:
/// entry(k, i) holds A[i+k, i] for k = 0..p. Everything the models need
/// (Q, Q_lambda, R, posterior precisions) has half-bandwidth p <= 2.
class BandedSymmetricMatrix {
public:
    BandedSymmetricMatrix(std::size_t dim, std::size_t half_bandwidth)
        : dim_(dim), p_(half_bandwidth), data_(dim * (half_bandwidth + 1), 0.0) {}

    std::size_t dim() const { return dim_; }
    std::size_t half_bandwidth() const { return p_; }

    /// A[i+k, i], k = 0..p.
    double band(std::size_t k, std::size_t i) const { return data_[i * (p_ + 1) + k]; }
    double& band(std::size_t k, std::size_t i) { return data_[i * (p_ + 1) + k]; }

    /// Full symmetric accessor; zero outside the band.
    double entry(std::size_t i, std::size_t j) const {
        const std::size_t lo = i < j ? i : j;
        const std::size_t hi = i < j ? j : i;
        const std::size_t k = hi - lo;
        return k <= p_ ? band(k, lo) : 0.0;
    }

    void add(std::size_t i, std::size_t j, double v) {
        const std::size_t lo = i < j ? i : j;
        band(i < j ? j - i : i - j, lo) += v;
    }

    /// y = A x.
    std::vector<double> multiply(std::span<const double> x) const;

    double max_abs() const;

    /// this + alpha * other; bandwidths may differ, result takes the larger.
    BandedSymmetricMatrix add_scaled(const BandedSymmetricMatrix& other, double alpha) const;

    void scale(double alpha);

private:
    std::size_t dim_;
    std::size_t p_;
    std::vector<double> data_;
};

/// x' A x, evaluated band by band.
double quad_form(const BandedSymmetricMatrix& m, std::span<const double> x);

} // namespace bass
