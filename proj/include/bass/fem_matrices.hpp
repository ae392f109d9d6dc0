#pragma once

#include "bass/banded_matrix.hpp"
#include "bass/grid.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bass {

/// General tridiagonal matrix. Used for the second-difference operator H
/// (first and last rows all zero) and the piecewise-linear mass matrix B.
struct TriDiagMatrix {
    std::size_t dim = 0;
    std::vector<double> sub;   // [i]   = A[i+1, i]
    std::vector<double> main;  // [i]   = A[i, i]
    std::vector<double> super; // [i]   = A[i, i+1]

    explicit TriDiagMatrix(std::size_t n)
        : dim(n), sub(n ? n - 1 : 0, 0.0), main(n, 0.0), super(n ? n - 1 : 0, 0.0) {}

    double entry(std::size_t i, std::size_t j) const {
        if (i == j) return main[i];
        if (j + 1 == i) return sub[j];
        if (i + 1 == j) return super[i];
        return 0.0;
    }

    /// y = A x.
    std::vector<double> multiply(std::span<const double> x) const;
};

/// Diagonal matrix with strictly positive entries (the lumped mass matrix
/// B~ and the smoothing-weight matrix Lambda).
struct DiagonalMatrix {
    std::vector<double> diag;

    std::size_t dim() const { return diag.size(); }
};

/// Sparse row representation of a piecewise-linear basis evaluation matrix:
/// row r interpolates between columns left_col[r] and left_col[r]+1 with
/// weights left_w[r] and 1-left_w[r]. Rows always sum to one.
class InterpolationMatrix {
public:
    InterpolationMatrix(std::size_t rows, std::size_t cols)
        : cols_(cols), left_col_(rows, 0), left_w_(rows, 1.0) {}

    std::size_t rows() const { return left_col_.size(); }
    std::size_t cols() const { return cols_; }

    void set_row(std::size_t r, std::size_t left_col, double left_weight) {
        left_col_[r] = left_col;
        left_w_[r] = left_weight;
    }

    std::size_t left_col(std::size_t r) const { return left_col_[r]; }
    double left_weight(std::size_t r) const { return left_w_[r]; }

    double entry(std::size_t r, std::size_t c) const {
        if (c == left_col_[r]) return left_w_[r];
        if (c == left_col_[r] + 1) return 1.0 - left_w_[r];
        return 0.0;
    }

    /// y = M x (x over columns/knots, y over rows/evaluation points).
    std::vector<double> apply(std::span<const double> x) const;

    /// y = M' v.
    std::vector<double> apply_transpose(std::span<const double> v) const;

    /// M' diag(w) M, a cols x cols matrix with half-bandwidth 1.
    BandedSymmetricMatrix normal_matrix(std::span<const double> w) const;

    /// M' diag(w) v.
    std::vector<double> weighted_transpose_apply(std::span<const double> w,
                                                 std::span<const double> v) const;

private:
    std::size_t cols_;
    std::vector<std::size_t> left_col_;
    std::vector<double> left_w_;
};

/// Second-difference operator: H[i,i-1] = 1/h_{i-1},
/// H[i,i] = -(1/h_{i-1} + 1/h_i), H[i,i+1] = 1/h_i on interior rows,
/// first and last rows zero.
TriDiagMatrix build_H(const Grid& grid);

/// Piecewise-linear mass matrix: B[i,i-1] = h_{i-1}/6,
/// B[i,i] = (h_{i-1}+h_i)/3, B[i,i+1] = h_i/6, with boundary diagonal
/// h_1/3 and h_{n-1}/3.
TriDiagMatrix build_B(const Grid& grid);

/// Lumped (diagonal) mass matrix: h_1/2, (h_{i-1}+h_i)/2, h_{n-1}/2.
DiagonalMatrix build_Btilde(const Grid& grid);

/// Q = H' Btilde^{-1} H. Half-bandwidth 2, rank n-2, null space spanned
/// by the constant and the knot vector.
BandedSymmetricMatrix build_Q_global(const Grid& grid);

/// Q_lambda = H' Lambda Btilde^{-1} Lambda H with
/// Lambda = diag(lambda(t_1), ..., lambda(t_n)). Does not depend on
/// lambda(t_1) or lambda(t_n).
BandedSymmetricMatrix build_Q_sde1(const Grid& grid, std::span<const double> lambda);

/// Q_lambda = Lambda H' Btilde^{-1} H Lambda; null space spanned by
/// Lambda^{-1} 1 and Lambda^{-1} t.
BandedSymmetricMatrix build_Q_sde2(const Grid& grid, std::span<const double> lambda);

/// R = kappa^4 Btilde - kappa^2 (H' + H) + H' Btilde^{-1} H.
/// Strictly positive definite for kappa > 0; equals Q at kappa = 0.
BandedSymmetricMatrix build_R(const Grid& grid, double kappa);

/// Piecewise-linear basis evaluation at arbitrary points. Points outside
/// [t_1, t_n] are clamped to the boundary knots.
InterpolationMatrix build_interpolation(std::span<const double> eval_points, const Grid& grid);

} // namespace bass
