#include "bass/errors.hpp"
#include "bass/fem_matrices.hpp"
#include "bass/gmrf_linalg.hpp"

#include "dense_oracle.hpp"

#include <doctest.h>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

using namespace bass;

namespace {

Grid unit_grid(std::size_t n) {
    std::vector<double> knots(n);
    for (std::size_t i = 0; i < n; ++i)
        knots[i] = static_cast<double>(i);
    return Grid::from_sorted_knots(std::move(knots));
}

} // namespace

TEST_CASE("H on a regular grid has the (1, -2, 1) stencil") {
    const TriDiagMatrix h = build_H(unit_grid(5));
    for (std::size_t i = 1; i + 1 < 5; ++i) {
        CHECK(h.entry(i, i - 1) == 1.0);
        CHECK(h.entry(i, i) == -2.0);
        CHECK(h.entry(i, i + 1) == 1.0);
    }
}

TEST_CASE("H entries on an irregular grid") {
    const Grid g = Grid::from_sorted_knots({0.0, 0.5, 0.75, 1.0});
    const TriDiagMatrix h = build_H(g);
    CHECK(h.entry(1, 0) == doctest::Approx(2.0));
    CHECK(h.entry(1, 1) == doctest::Approx(-6.0));
    CHECK(h.entry(1, 2) == doctest::Approx(4.0));
    CHECK(h.entry(2, 1) == doctest::Approx(4.0));
    CHECK(h.entry(2, 2) == doctest::Approx(-8.0));
    CHECK(h.entry(2, 3) == doctest::Approx(4.0));
}

TEST_CASE("first and last rows of H are zero") {
    RngStream rng(11);
    const Grid g = oracle::random_grid(rng, 9);
    const TriDiagMatrix h = build_H(g);
    const std::size_t n = g.size();
    for (std::size_t j = 0; j < n; ++j) {
        CHECK(h.entry(0, j) == 0.0);
        CHECK(h.entry(n - 1, j) == 0.0);
    }
}

TEST_CASE("B interior row and boundary values") {
    const TriDiagMatrix b = build_B(unit_grid(5));
    CHECK(b.entry(2, 1) == doctest::Approx(1.0 / 6.0));
    CHECK(b.entry(2, 2) == doctest::Approx(2.0 / 3.0));
    CHECK(b.entry(2, 3) == doctest::Approx(1.0 / 6.0));
    CHECK(b.entry(0, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(b.entry(4, 4) == doctest::Approx(1.0 / 3.0));

    const Grid g = Grid::from_sorted_knots({0.0, 1.0, 3.0, 4.0});
    CHECK(build_B(g).entry(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("B boundary diagonal equals the half-support hat integral") {
    // int_0^1 (1-u)^2 du evaluated by midpoint quadrature
    const int steps = 200000;
    double integral = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double u = (k + 0.5) / steps;
        integral += (1.0 - u) * (1.0 - u) / steps;
    }
    CHECK(build_B(unit_grid(5)).entry(0, 0) == doctest::Approx(integral).epsilon(1e-8));
}

TEST_CASE("Btilde diagonal values") {
    const DiagonalMatrix d4 = build_Btilde(unit_grid(4));
    CHECK(d4.diag == std::vector<double>{0.5, 1.0, 1.0, 0.5});

    const Grid g = Grid::from_sorted_knots({0.0, 0.5, 0.75, 1.0});
    const DiagonalMatrix d = build_Btilde(g);
    CHECK(d.diag[0] == doctest::Approx(0.25));
    CHECK(d.diag[1] == doctest::Approx(0.375));
    CHECK(d.diag[2] == doctest::Approx(0.25));
    CHECK(d.diag[3] == doctest::Approx(0.125));
}

TEST_CASE("Btilde is the lumped (row-sum) version of B") {
    RngStream rng(21);
    for (int rep = 0; rep < 20; ++rep) {
        const Grid g = oracle::random_grid(rng, 5 + rep);
        const TriDiagMatrix b = build_B(g);
        const DiagonalMatrix bt = build_Btilde(g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            double row_sum = b.entry(i, i);
            if (i > 0) row_sum += b.entry(i, i - 1);
            if (i + 1 < g.size()) row_sum += b.entry(i, i + 1);
            CHECK(row_sum == doctest::Approx(bt.diag[i]).epsilon(1e-14));
        }
    }
}

TEST_CASE("Q on a unit grid has the classical fourth-difference stencil") {
    const BandedSymmetricMatrix q = build_Q_global(unit_grid(7));
    const std::size_t mid = 3;
    CHECK(q.entry(mid, mid - 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.entry(mid, mid - 1) == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(q.entry(mid, mid) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(q.entry(mid, mid + 1) == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(q.entry(mid, mid + 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Q annihilates constants and the knot vector") {
    RngStream rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const Grid g = oracle::random_grid(rng, 6 + 3 * rep);
        const BandedSymmetricMatrix q = build_Q_global(g);
        const std::vector<double> ones(g.size(), 1.0);
        const double scale = q.max_abs();
        for (double v : q.multiply(ones))
            CHECK(std::abs(v) <= 1e-10 * scale);
        for (double v : q.multiply(g.knots()))
            CHECK(std::abs(v) <= 1e-10 * scale);
    }
}

TEST_CASE("banded Q matches the dense triple product") {
    RngStream rng(41);
    const Grid g = oracle::random_grid(rng, 10);
    const double err = oracle::rel_error(oracle::dense_Q_global(g),
                                         oracle::to_dense(build_Q_global(g)));
    CHECK(err <= 1e-12);
}

TEST_CASE("Q_sde1 reduces to Q at lambda = 1 and scales quadratically") {
    const Grid g = unit_grid(6);
    const BandedSymmetricMatrix q = build_Q_global(g);
    const BandedSymmetricMatrix q1 = build_Q_sde1(g, std::vector<double>(6, 1.0));
    for (std::size_t k = 0; k <= 2; ++k)
        for (std::size_t i = 0; i + k < 6; ++i)
            CHECK(q1.band(k, i) == q.band(k, i));

    const BandedSymmetricMatrix q2 = build_Q_sde1(g, std::vector<double>(6, 2.0));
    CHECK(q2.entry(3, 3) == doctest::Approx(24.0));
    for (std::size_t k = 0; k <= 2; ++k)
        for (std::size_t i = 0; i + k < 6; ++i)
            CHECK(q2.band(k, i) == doctest::Approx(4.0 * q.band(k, i)));
}

TEST_CASE("Q_sde1 matches the dense sandwich and ignores boundary lambda") {
    RngStream rng(51);
    const Grid g = oracle::random_grid(rng, 10);
    std::vector<double> lam = oracle::random_lambda(rng, 10);
    const BandedSymmetricMatrix q = build_Q_sde1(g, lam);
    CHECK(oracle::rel_error(oracle::dense_Q_sde1(g, lam), oracle::to_dense(q)) <= 1e-12);

    std::vector<double> lam2 = lam;
    lam2.front() *= 37.0;
    lam2.back() *= 0.01;
    const BandedSymmetricMatrix qb = build_Q_sde1(g, lam2);
    for (std::size_t k = 0; k <= 2; ++k)
        for (std::size_t i = 0; i + k < 10; ++i)
            CHECK(qb.band(k, i) == q.band(k, i));
}

TEST_CASE("Q_sde1 rejects bad lambda") {
    const Grid g = unit_grid(5);
    CHECK_THROWS_AS(build_Q_sde1(g, std::vector<double>{1.0, 1.0, -1.0, 1.0, 1.0}),
                    DomainError);
    CHECK_THROWS_AS(build_Q_sde1(g, std::vector<double>{1.0, 1.0, 1.0}), InputError);
}

TEST_CASE("Q_sde2 closed-form corner entry and constant scaling") {
    const Grid g = unit_grid(5);
    const std::vector<double> lam{1.0, 2.0, 3.0, 4.0, 5.0};
    const BandedSymmetricMatrix q = build_Q_sde2(g, lam);
    // 2 lambda(t_1) lambda(t_3) / (h1 h2 (h1 + h2))
    CHECK(q.entry(2, 0) == doctest::Approx(3.0));

    const BandedSymmetricMatrix qc = build_Q_sde2(g, std::vector<double>(5, 3.0));
    const BandedSymmetricMatrix qg = build_Q_global(g);
    for (std::size_t k = 0; k <= 2; ++k)
        for (std::size_t i = 0; i + k < 5; ++i)
            CHECK(qc.band(k, i) == doctest::Approx(9.0 * qg.band(k, i)));
}

TEST_CASE("Q_sde2 matches the dense sandwich and has the scaled null space") {
    RngStream rng(61);
    const Grid g = oracle::random_grid(rng, 10);
    const std::vector<double> lam = oracle::random_lambda(rng, 10);
    const BandedSymmetricMatrix q = build_Q_sde2(g, lam);
    CHECK(oracle::rel_error(oracle::dense_Q_sde2(g, lam), oracle::to_dense(q)) <= 1e-12);

    std::vector<double> inv_ones(10), inv_t(10);
    for (std::size_t i = 0; i < 10; ++i) {
        inv_ones[i] = 1.0 / lam[i];
        inv_t[i] = g.knot(i) / lam[i];
    }
    const double scale = q.max_abs();
    for (double v : q.multiply(inv_ones))
        CHECK(std::abs(v) <= 1e-10 * scale);
    for (double v : q.multiply(inv_t))
        CHECK(std::abs(v) <= 1e-10 * scale);
}

TEST_CASE("R at kappa = 0 is the intrinsic Q") {
    RngStream rng(71);
    const Grid g = oracle::random_grid(rng, 8);
    const BandedSymmetricMatrix r = build_R(g, 0.0);
    const BandedSymmetricMatrix q = build_Q_global(g);
    for (std::size_t k = 0; k <= 2; ++k)
        for (std::size_t i = 0; i + k < 8; ++i)
            CHECK(r.band(k, i) == doctest::Approx(q.band(k, i)));
}

TEST_CASE("R central entry on a unit grid at kappa = 1") {
    const BandedSymmetricMatrix r = build_R(unit_grid(9), 1.0);
    CHECK(r.entry(4, 4) == doctest::Approx(11.0));
}

TEST_CASE("R is positive definite for kappa > 0 and matches the dense composition") {
    RngStream rng(81);
    for (int rep = 0; rep < 5; ++rep) {
        const Grid g = oracle::random_grid(rng, 7 + rep);
        const BandedSymmetricMatrix r = build_R(g, 0.5);
        CHECK_NOTHROW(cholesky_banded(r));
        CHECK(oracle::rel_error(oracle::dense_R(g, 0.5), oracle::to_dense(r)) <= 1e-12);
    }
    CHECK_THROWS_AS(build_R(unit_grid(5), -1.0), DomainError);
}

TEST_CASE("interpolation at the knots is the identity") {
    const Grid g = Grid::from_sorted_knots({0.0, 0.5, 0.75, 1.0});
    const InterpolationMatrix m = build_interpolation(g.knots(), g);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            CHECK(m.entry(r, c) == (r == c ? 1.0 : 0.0));
}

TEST_CASE("interpolation midway between knots splits evenly") {
    const Grid g = unit_grid(5);
    const InterpolationMatrix m = build_interpolation(std::vector<double>{1.5}, g);
    CHECK(m.entry(0, 1) == doctest::Approx(0.5));
    CHECK(m.entry(0, 2) == doctest::Approx(0.5));
    CHECK(m.entry(0, 0) == 0.0);
    CHECK(m.entry(0, 3) == 0.0);
}

TEST_CASE("interpolation clamps points outside the mesh") {
    const Grid g = unit_grid(4);
    const InterpolationMatrix m = build_interpolation(std::vector<double>{-0.1, 3.7}, g);
    CHECK(m.entry(0, 0) == 1.0);
    CHECK(m.entry(1, 3) == 1.0);
    CHECK_THROWS_AS(build_interpolation(std::vector<double>{}, g), InputError);
}

TEST_CASE("interpolation rows sum to one with at most two nonzeros") {
    RngStream rng(91);
    const Grid g = oracle::random_grid(rng, 12);
    std::vector<double> pts(40);
    for (double& p : pts)
        p = g.front() - 1.0 + (g.span_length() + 2.0) * rng.uniform01();
    const InterpolationMatrix m = build_interpolation(pts, g);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double sum = 0.0;
        int nonzeros = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const double v = m.entry(r, c);
            CHECK(v >= 0.0);
            if (v != 0.0) ++nonzeros;
            sum += v;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(nonzeros <= 2);
    }
}

TEST_CASE("oracle equivalence over random grids") {
    RngStream rng(101);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 5 + static_cast<std::size_t>(rng.uniform01() * 45.0);
        const Grid g = oracle::random_grid(rng, n);
        const std::vector<double> lam = oracle::random_lambda(rng, n);
        CHECK(oracle::rel_error(oracle::dense_Q_global(g),
                                oracle::to_dense(build_Q_global(g))) <= 1e-12);
        CHECK(oracle::rel_error(oracle::dense_Q_sde1(g, lam),
                                oracle::to_dense(build_Q_sde1(g, lam))) <= 1e-12);
        CHECK(oracle::rel_error(oracle::dense_Q_sde2(g, lam),
                                oracle::to_dense(build_Q_sde2(g, lam))) <= 1e-12);
        CHECK(oracle::rel_error(oracle::dense_R(g, 0.7),
                                oracle::to_dense(build_R(g, 0.7))) <= 1e-12);
    }
}

TEST_CASE("Q has exactly two zero eigenvalues") {
    RngStream rng(111);
    const Grid g = oracle::random_grid(rng, 8);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        oracle::to_dense(build_Q_global(g)));
    const Eigen::VectorXd ev = es.eigenvalues();
    const double largest = ev(ev.size() - 1);
    int zeros = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i)) <= 1e-9 * largest)
            ++zeros;
    CHECK(zeros == 2);
}
