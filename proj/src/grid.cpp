#include "bass/grid.hpp"

#include "bass/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bass {

Grid Grid::from_sorted_knots(std::vector<double> knots) {
    if (knots.size() < 2)
        throw InputError("grid needs at least 2 knots");
    Grid g;
    g.knots_ = std::move(knots);
    g.spacings_.resize(g.knots_.size() - 1);
    for (std::size_t j = 0; j + 1 < g.knots_.size(); ++j) {
        const double h = g.knots_[j + 1] - g.knots_[j];
        if (!(h > 0.0))
            throw InputError("knots must be strictly increasing");
        g.spacings_[j] = h;
    }
    return g;
}

std::size_t Grid::segment_of(double x) const {
    if (x <= knots_.front())
        return 0;
    if (x >= knots_.back())
        return knots_.size() - 2;
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

Grid build_grid(std::span<const double> locations) {
    std::vector<double> pts;
    pts.reserve(locations.size());
    for (double x : locations) {
        if (!std::isfinite(x))
            throw InputError("non-finite knot location");
        pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 4)
        throw DegenerateGridError("need at least 4 distinct locations, got " +
                                  std::to_string(pts.size()));

    const double extent = pts.back() - pts.front();
    for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
        if (pts[j + 1] - pts[j] < 1e-12 * extent)
            throw DegenerateGridError("knot spacing below 1e-12 of the domain extent");
    }
    return Grid::from_sorted_knots(std::move(pts));
}

} // namespace bass
