// Uniform rectangular grid, scalar fields and central-difference stencils.
#pragma once

#include <cassert>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace capmcf {

// Node-centered grid on (alpha_x,beta_x)x(alpha_y,beta_y) with square cells.
// Node coordinates follow x_j = alpha_x + j*dx (1 <= j <= n_x) and
// y_i = alpha_y + i*dx (1 <= i <= n_y); the extreme rows/columns
// (i=1, i=n_y, j=1, j=n_x) are the boundary nodes.
struct GridSpec {
    double alpha_x = 0.0;
    double beta_x = 1.0;
    double alpha_y = 0.0;
    double beta_y = 1.0;
    int n_x = 0;
    int n_y = 0;
    double dx = 0.0;

    double x_of(int j) const { return alpha_x + j * dx; }
    double y_of(int i) const { return alpha_y + i * dx; }
    std::size_t size() const { return static_cast<std::size_t>(n_x) * n_y; }

    bool operator==(const GridSpec&) const = default;
};

// Fails unless (beta_x-alpha_x)/n_x == (beta_y-alpha_y)/n_y exactly.
GridSpec make_grid(double alpha_x, double beta_x, double alpha_y, double beta_y,
                   int n_x, int n_y);

// Real values on the grid nodes, indexed (row i, column j) with
// 1 <= i <= n_y, 1 <= j <= n_x. Row-major in (i,j).
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g, double fill = 0.0)
        : grid(g), values(g.size(), fill) {}

    double& at(int i, int j) {
        assert(i >= 1 && i <= grid.n_y && j >= 1 && j <= grid.n_x);
        return values[static_cast<std::size_t>(i - 1) * grid.n_x + (j - 1)];
    }
    double at(int i, int j) const {
        assert(i >= 1 && i <= grid.n_y && j >= 1 && j <= grid.n_x);
        return values[static_cast<std::size_t>(i - 1) * grid.n_x + (j - 1)];
    }
};

// Ghost values just outside each wall, one per boundary node. left[i-1] is
// u_{i,0}, right[i-1] is u_{i,n_x+1}, bottom[j-1] is u_{0,j}, top[j-1] is
// u_{n_y+1,j}. Corner nodes own two ghosts (one in each adjacent array).
struct GhostValues {
    std::vector<double> left, right, bottom, top;

    explicit GhostValues(const GridSpec& g)
        : left(g.n_y, 0.0), right(g.n_y, 0.0),
          bottom(g.n_x, 0.0), top(g.n_x, 0.0) {}
};

// Mirror (homogeneous Neumann) ghosts: u_{i,0} = u_{i,2} etc.
GhostValues mirror_ghosts(const ScalarField& u);

// Central differences (u_{i,j+1}-u_{i,j-1})/(2 dx); boundary rows/columns
// use the supplied ghosts, mirror ghosts when none are given.
void central_gradient(const ScalarField& u, const GhostValues& ghosts,
                      ScalarField& gx, ScalarField& gy);
std::pair<ScalarField, ScalarField> central_gradient(const ScalarField& u);

// Plain-text dump: header "n_y n_x dx", then n_y rows of n_x values with
// full round-trip precision. Loading places the grid at the origin; only
// shape, spacing and values round-trip.
void dump_field(const ScalarField& u, std::ostream& os);
void dump_field(const ScalarField& u, const std::string& path);
ScalarField load_field(std::istream& is);
ScalarField load_field(const std::string& path);

}  // namespace capmcf
