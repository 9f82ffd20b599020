#include <doctest.h>

#include <set>

#include "capmcf/boundary.hpp"

using namespace capmcf;

TEST_CASE("boundary ring visits every boundary node exactly once") {
    const GridSpec g = make_grid(0, 1, 0, 1, 5, 4);
    const BoundaryField b(g);
    CHECK(b.ring_size() == 2 * (5 + 4) - 4);
    std::set<std::pair<int, int>> seen;
    for (int k = 0; k < b.ring_size(); ++k) {
        const auto [i, j] = b.node(k);
        CHECK((i == 1 || i == g.n_y || j == 1 || j == g.n_x));
        CHECK(seen.insert({i, j}).second);
        CHECK(b.ring_index(i, j) == k);
    }
    CHECK(static_cast<int>(seen.size()) == b.ring_size());
}

TEST_CASE("ring_index rejects interior nodes") {
    const GridSpec g = make_grid(0, 1, 0, 1, 5, 5);
    const BoundaryField b(g);
    CHECK_THROWS(b.ring_index(3, 3));
}

TEST_CASE("from_walls assigns corners to the vertical walls") {
    const GridSpec g = make_grid(0, 2, 0, 1, 8, 4);
    const BoundaryField b = BoundaryField::from_walls(g, -0.5, -0.25, 0.75, 0.0);
    CHECK(b.at(1, 1) == -0.5);        // bottom-left corner: left wall value
    CHECK(b.at(1, g.n_x) == -0.25);   // bottom-right corner: right wall value
    CHECK(b.at(g.n_y, 1) == -0.5);
    CHECK(b.at(g.n_y, g.n_x) == -0.25);
    CHECK(b.at(1, 3) == 0.75);
    CHECK(b.at(g.n_y, 3) == 0.0);
    CHECK(b.at(2, 1) == -0.5);
    CHECK(b.at(2, g.n_x) == -0.25);

    const auto left = b.wall_left();
    const auto bottom = b.wall_bottom();
    CHECK(left.size() == 4);
    CHECK(bottom.size() == 8);
    CHECK(bottom.front() == -0.5);  // shared corner reports the stored value
    CHECK(bottom[1] == 0.75);
}

TEST_CASE("weighted_sum is the dx-weighted ring total") {
    const GridSpec g = make_grid(0, 2, 0, 1, 8, 4);
    BoundaryField b(g);
    for (int k = 0; k < b.ring_size(); ++k) b.values[k] = 1.0;
    CHECK(b.weighted_sum() == doctest::Approx(b.ring_size() * g.dx).epsilon(1e-14));
}
