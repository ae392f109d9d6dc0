#include "bass/errors.hpp"
#include "bass/grid.hpp"

#include <doctest.h>

#include <limits>
#include <vector>

using namespace bass;

TEST_CASE("build_grid sorts and deduplicates") {
    const std::vector<double> locs{0.0, 0.5, 0.25, 1.0, 0.75};
    const Grid g = build_grid(locs);
    CHECK(g.knots() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(g.spacings() == std::vector<double>{0.25, 0.25, 0.25, 0.25});
}

TEST_CASE("build_grid collapses duplicates") {
    const std::vector<double> locs{0.0, 0.0, 1.0, 2.0, 3.0};
    const Grid g = build_grid(locs);
    CHECK(g.knots() == std::vector<double>{0.0, 1.0, 2.0, 3.0});
}

TEST_CASE("build_grid rejects degenerate input") {
    CHECK_THROWS_AS(build_grid(std::vector<double>{0.0, 1.0, 2.0}), DegenerateGridError);
    CHECK_THROWS_AS(build_grid(std::vector<double>{1.0, 1.0, 1.0, 1.0, 1.0}),
                    DegenerateGridError);
    CHECK_THROWS_AS(build_grid(std::vector<double>{0.0, 1.0, 2.0,
                                                   std::numeric_limits<double>::infinity()}),
                    InputError);
    CHECK_THROWS_AS(build_grid(std::vector<double>{0.0, 1e-16, 1.0, 2.0}),
                    DegenerateGridError);
}

TEST_CASE("segment lookup clamps to the mesh") {
    const Grid g = build_grid(std::vector<double>{0.0, 1.0, 2.0, 3.0});
    CHECK(g.segment_of(-5.0) == 0);
    CHECK(g.segment_of(0.0) == 0);
    CHECK(g.segment_of(1.5) == 1);
    CHECK(g.segment_of(3.0) == 2);
    CHECK(g.segment_of(7.0) == 2);
}
