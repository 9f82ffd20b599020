// Values attached to the boundary nodes of a grid (four walls + corners).
#pragma once

#include <vector>

#include "capmcf/grid.hpp"

namespace capmcf {

// One value per boundary node, stored along the boundary ring. The ring
// starts at corner (1,1) and runs bottom row (j ascending), right column
// (i ascending), top row (j descending), left column (i descending), so
// every boundary node appears exactly once and k*dx serves as an
// arc-length coordinate. Quadrature: every ring node carries weight dx.
struct BoundaryField {
    GridSpec grid;
    std::vector<double> values;

    BoundaryField() = default;
    explicit BoundaryField(const GridSpec& g, double fill = 0.0)
        : grid(g), values(ring_size(g), fill) {}

    static int ring_size(const GridSpec& g) { return 2 * (g.n_x + g.n_y) - 4; }
    int ring_size() const { return static_cast<int>(values.size()); }
    double ring_length() const { return ring_size() * grid.dx; }

    // Ring index -> boundary node (i,j).
    std::pair<int, int> node(int k) const;
    // Boundary node (i,j) -> ring index; throws for interior nodes.
    int ring_index(int i, int j) const;

    double at(int i, int j) const { return values[ring_index(i, j)]; }
    double& at(int i, int j) { return values[ring_index(i, j)]; }

    // Weighted boundary sum  sum_k beta_k * dx.
    double weighted_sum() const;
    double max_abs() const;

    // Per-wall vectors for stencil code. Corner nodes are shared: they are
    // reported in both incident walls with their single stored value.
    std::vector<double> wall_left() const;    // index i-1, size n_y
    std::vector<double> wall_right() const;   // index i-1, size n_y
    std::vector<double> wall_bottom() const;  // index j-1, size n_x
    std::vector<double> wall_top() const;     // index j-1, size n_x

    // Constant values per wall; corners take the vertical-wall value.
    static BoundaryField from_walls(const GridSpec& g, double left, double right,
                                    double bottom, double top);
};

}  // namespace capmcf
