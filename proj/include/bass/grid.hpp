#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bass {

/// Sorted knot locations t_1 < ... < t_n together with the spacings
/// h_j = t_{j+1} - t_j. This is the finite-element mesh every matrix
/// constructor works on.
class Grid {
public:
    /// Builds a mesh directly from already sorted, strictly increasing knots.
    /// Requires n >= 2; data-facing code should go through build_grid, which
    /// additionally enforces the n >= 4 identifiability rule.
    static Grid from_sorted_knots(std::vector<double> knots);

    std::size_t size() const { return knots_.size(); }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& spacings() const { return spacings_; }

    double knot(std::size_t i) const { return knots_[i]; }
    /// h_j = t_{j+1} - t_j for j in [0, n-2].
    double spacing(std::size_t j) const { return spacings_[j]; }

    double front() const { return knots_.front(); }
    double back() const { return knots_.back(); }
    double span_length() const { return knots_.back() - knots_.front(); }

    /// Index j of the segment [t_j, t_{j+1}] containing x, clamping x outside
    /// [t_1, t_n] to the boundary segments.
    std::size_t segment_of(double x) const;

private:
    Grid() = default;

    std::vector<double> knots_;
    std::vector<double> spacings_;
};

/// Sorts and deduplicates raw observation locations into a mesh.
/// Throws InputError on non-finite values and DegenerateGridError when fewer
/// than 4 distinct locations remain. Grids whose smallest spacing is below
/// 1e-12 x (t_n - t_1) are rejected as degenerate (1/h entries overflow).
Grid build_grid(std::span<const double> locations);

} // namespace bass
