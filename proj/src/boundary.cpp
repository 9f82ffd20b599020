#include "capmcf/boundary.hpp"

#include <cmath>
#include <stdexcept>

namespace capmcf {

std::pair<int, int> BoundaryField::node(int k) const {
    const int nx = grid.n_x, ny = grid.n_y;
    if (k < 0 || k >= ring_size()) throw std::out_of_range("BoundaryField::node");
    if (k < nx) return {1, k + 1};                    // bottom, (1,1)..(1,nx)
    k -= nx;
    if (k < ny - 1) return {k + 2, nx};               // right, (2,nx)..(ny,nx)
    k -= ny - 1;
    if (k < nx - 1) return {ny, nx - 1 - k};          // top, (ny,nx-1)..(ny,1)
    k -= nx - 1;
    return {ny - 1 - k, 1};                           // left, (ny-1,1)..(2,1)
}

int BoundaryField::ring_index(int i, int j) const {
    const int nx = grid.n_x, ny = grid.n_y;
    if (i == 1) return j - 1;
    if (j == nx) return nx + (i - 2);
    if (i == ny) return nx + (ny - 1) + (nx - 1 - j);
    if (j == 1) return nx + (ny - 1) + (nx - 1) + (ny - 1 - i);
    throw std::invalid_argument("BoundaryField::ring_index: interior node");
}

double BoundaryField::weighted_sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * grid.dx;
}

double BoundaryField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> BoundaryField::wall_left() const {
    std::vector<double> w(grid.n_y);
    for (int i = 1; i <= grid.n_y; ++i) w[i - 1] = at(i, 1);
    return w;
}

std::vector<double> BoundaryField::wall_right() const {
    std::vector<double> w(grid.n_y);
    for (int i = 1; i <= grid.n_y; ++i) w[i - 1] = at(i, grid.n_x);
    return w;
}

std::vector<double> BoundaryField::wall_bottom() const {
    std::vector<double> w(grid.n_x);
    for (int j = 1; j <= grid.n_x; ++j) w[j - 1] = at(1, j);
    return w;
}

std::vector<double> BoundaryField::wall_top() const {
    std::vector<double> w(grid.n_x);
    for (int j = 1; j <= grid.n_x; ++j) w[j - 1] = at(grid.n_y, j);
    return w;
}

BoundaryField BoundaryField::from_walls(const GridSpec& g, double left, double right,
                                        double bottom, double top) {
    BoundaryField b(g);
    for (int j = 2; j <= g.n_x - 1; ++j) {
        b.at(1, j) = bottom;
        b.at(g.n_y, j) = top;
    }
    for (int i = 1; i <= g.n_y; ++i) {
        b.at(i, 1) = left;
        b.at(i, g.n_x) = right;
    }
    return b;
}

}  // namespace capmcf
