#include "bass/banded_matrix.hpp"

#include "bass/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bass {

std::vector<double> BandedSymmetricMatrix::multiply(std::span<const double> x) const {
    if (x.size() != dim_)
        throw InputError("multiply: dimension mismatch");
    std::vector<double> y(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i)
        y[i] += band(0, i) * x[i];
    for (std::size_t k = 1; k <= p_; ++k) {
        for (std::size_t i = 0; i + k < dim_; ++i) {
            const double a = band(k, i);
            y[i + k] += a * x[i];
            y[i] += a * x[i + k];
        }
    }
    return y;
}

double BandedSymmetricMatrix::max_abs() const {
    double m = 0.0;
    for (std::size_t k = 0; k <= p_; ++k)
        for (std::size_t i = 0; i + k < dim_; ++i)
            m = std::max(m, std::abs(band(k, i)));
    return m;
}

BandedSymmetricMatrix BandedSymmetricMatrix::add_scaled(const BandedSymmetricMatrix& other,
                                                        double alpha) const {
    if (other.dim_ != dim_)
        throw InputError("add_scaled: dimension mismatch");
    BandedSymmetricMatrix out(dim_, std::max(p_, other.p_));
    for (std::size_t k = 0; k <= p_; ++k)
        for (std::size_t i = 0; i + k < dim_; ++i)
            out.band(k, i) += band(k, i);
    for (std::size_t k = 0; k <= other.p_; ++k)
        for (std::size_t i = 0; i + k < dim_; ++i)
            out.band(k, i) += alpha * other.band(k, i);
    return out;
}

void BandedSymmetricMatrix::scale(double alpha) {
    for (double& v : data_)
        v *= alpha;
}

double quad_form(const BandedSymmetricMatrix& m, std::span<const double> x) {
    if (x.size() != m.dim())
        throw InputError("quad_form: dimension mismatch");
    double diag = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        diag += m.band(0, i) * x[i] * x[i];
    double off = 0.0;
    for (std::size_t k = 1; k <= m.half_bandwidth(); ++k)
        for (std::size_t i = 0; i + k < m.dim(); ++i)
            off += m.band(k, i) * x[i] * x[i + k];
    return diag + 2.0 * off;
}

} // namespace bass
