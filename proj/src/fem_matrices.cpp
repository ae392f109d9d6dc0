#include "bass/fem_matrices.hpp"

#include "bass/errors.hpp"

#include <cmath>

namespace bass {

std::vector<double> TriDiagMatrix::multiply(std::span<const double> x) const {
    if (x.size() != dim)
        throw InputError("tridiag multiply: dimension mismatch");
    std::vector<double> y(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        double v = main[i] * x[i];
        if (i > 0) v += sub[i - 1] * x[i - 1];
        if (i + 1 < dim) v += super[i] * x[i + 1];
        y[i] = v;
    }
    return y;
}

std::vector<double> InterpolationMatrix::apply(std::span<const double> x) const {
    if (x.size() != cols_)
        throw InputError("interpolation apply: dimension mismatch");
    std::vector<double> y(rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        const std::size_t c = left_col_[r];
        const double w = left_w_[r];
        y[r] = w * x[c] + (1.0 - w) * x[c + 1];
    }
    return y;
}

std::vector<double> InterpolationMatrix::apply_transpose(std::span<const double> v) const {
    if (v.size() != rows())
        throw InputError("interpolation apply_transpose: dimension mismatch");
    std::vector<double> y(cols_, 0.0);
    for (std::size_t r = 0; r < rows(); ++r) {
        const std::size_t c = left_col_[r];
        const double w = left_w_[r];
        y[c] += w * v[r];
        y[c + 1] += (1.0 - w) * v[r];
    }
    return y;
}

BandedSymmetricMatrix InterpolationMatrix::normal_matrix(std::span<const double> w) const {
    if (w.size() != rows())
        throw InputError("normal_matrix: weight length mismatch");
    BandedSymmetricMatrix out(cols_, 1);
    for (std::size_t r = 0; r < rows(); ++r) {
        const std::size_t c = left_col_[r];
        const double a = left_w_[r];
        const double b = 1.0 - a;
        out.band(0, c) += w[r] * a * a;
        out.band(1, c) += w[r] * a * b;
        out.band(0, c + 1) += w[r] * b * b;
    }
    return out;
}

std::vector<double> InterpolationMatrix::weighted_transpose_apply(
    std::span<const double> w, std::span<const double> v) const {
    if (w.size() != rows() || v.size() != rows())
        throw InputError("weighted_transpose_apply: length mismatch");
    std::vector<double> y(cols_, 0.0);
    for (std::size_t r = 0; r < rows(); ++r) {
        const std::size_t c = left_col_[r];
        const double a = left_w_[r];
        y[c] += a * w[r] * v[r];
        y[c + 1] += (1.0 - a) * w[r] * v[r];
    }
    return y;
}

TriDiagMatrix build_H(const Grid& grid) {
    const std::size_t n = grid.size();
    TriDiagMatrix h(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = grid.spacing(i - 1);
        const double hr = grid.spacing(i);
        h.sub[i - 1] = 1.0 / hl;
        h.main[i] = -(1.0 / hl + 1.0 / hr);
        h.super[i] = 1.0 / hr;
    }
    return h;
}

TriDiagMatrix build_B(const Grid& grid) {
    const std::size_t n = grid.size();
    TriDiagMatrix b(n);
    b.main[0] = grid.spacing(0) / 3.0;
    b.main[n - 1] = grid.spacing(n - 2) / 3.0;
    for (std::size_t i = 1; i + 1 < n; ++i)
        b.main[i] = (grid.spacing(i - 1) + grid.spacing(i)) / 3.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        b.sub[i] = grid.spacing(i) / 6.0;
        b.super[i] = grid.spacing(i) / 6.0;
    }
    return b;
}

DiagonalMatrix build_Btilde(const Grid& grid) {
    const std::size_t n = grid.size();
    DiagonalMatrix d;
    d.diag.resize(n);
    d.diag[0] = grid.spacing(0) / 2.0;
    d.diag[n - 1] = grid.spacing(n - 2) / 2.0;
    for (std::size_t i = 1; i + 1 < n; ++i)
        d.diag[i] = (grid.spacing(i - 1) + grid.spacing(i)) / 2.0;
    return d;
}

namespace {

// Accumulates sum_i c_i * h_i h_i' over interior rows h_i of H.
// Every Q variant reduces to this because the first and last rows of H
// vanish, so the boundary entries of Btilde (and of Lambda, for SDE I)
// never enter.
BandedSymmetricMatrix accumulate_rows(const Grid& grid, std::span<const double> row_weights) {
    const std::size_t n = grid.size();
    BandedSymmetricMatrix q(n, 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double c = row_weights[i];
        const double a = 1.0 / grid.spacing(i - 1);
        const double d = 1.0 / grid.spacing(i);
        const double b = -(a + d);
        q.band(0, i - 1) += c * a * a;
        q.band(1, i - 1) += c * a * b;
        q.band(2, i - 1) += c * a * d;
        q.band(0, i) += c * b * b;
        q.band(1, i) += c * b * d;
        q.band(0, i + 1) += c * d * d;
    }
    return q;
}

void check_lambda(std::span<const double> lambda, std::size_t n) {
    if (lambda.size() != n)
        throw InputError("lambda length must equal the number of knots");
    for (double v : lambda) {
        if (!std::isfinite(v))
            throw InputError("non-finite lambda entry");
        if (v <= 0.0)
            throw DomainError("lambda entries must be positive");
    }
}

} // namespace

BandedSymmetricMatrix build_Q_global(const Grid& grid) {
    const DiagonalMatrix bt = build_Btilde(grid);
    std::vector<double> w(grid.size(), 0.0);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        w[i] = 1.0 / bt.diag[i];
    return accumulate_rows(grid, w);
}

BandedSymmetricMatrix build_Q_sde1(const Grid& grid, std::span<const double> lambda) {
    check_lambda(lambda, grid.size());
    const DiagonalMatrix bt = build_Btilde(grid);
    std::vector<double> w(grid.size(), 0.0);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        w[i] = lambda[i] * lambda[i] / bt.diag[i];
    return accumulate_rows(grid, w);
}

BandedSymmetricMatrix build_Q_sde2(const Grid& grid, std::span<const double> lambda) {
    check_lambda(lambda, grid.size());
    BandedSymmetricMatrix q = build_Q_global(grid);
    for (std::size_t k = 0; k <= q.half_bandwidth(); ++k)
        for (std::size_t i = 0; i + k < q.dim(); ++i)
            q.band(k, i) *= lambda[i + k] * lambda[i];
    return q;
}

BandedSymmetricMatrix build_R(const Grid& grid, double kappa) {
    if (!(kappa >= 0.0))
        throw DomainError("kappa must be nonnegative");
    const std::size_t n = grid.size();
    BandedSymmetricMatrix r = build_Q_global(grid);

    const double k2 = kappa * kappa;
    const double k4 = k2 * k2;
    const DiagonalMatrix bt = build_Btilde(grid);
    const TriDiagMatrix h = build_H(grid);
    for (std::size_t i = 0; i < n; ++i)
        r.band(0, i) += k4 * bt.diag[i] - k2 * 2.0 * h.main[i];
    for (std::size_t i = 0; i + 1 < n; ++i)
        r.band(1, i) += -k2 * (h.sub[i] + h.super[i]);
    return r;
}

InterpolationMatrix build_interpolation(std::span<const double> eval_points, const Grid& grid) {
    if (eval_points.empty())
        throw InputError("empty evaluation point set");
    InterpolationMatrix m(eval_points.size(), grid.size());
    for (std::size_t r = 0; r < eval_points.size(); ++r) {
        double x = eval_points[r];
        if (!std::isfinite(x))
            throw InputError("non-finite evaluation point");
        if (x < grid.front()) x = grid.front();
        if (x > grid.back()) x = grid.back();
        const std::size_t j = grid.segment_of(x);
        const double u = (x - grid.knot(j)) / grid.spacing(j);
        m.set_row(r, j, 1.0 - u);
    }
    return m;
}

} // namespace bass
