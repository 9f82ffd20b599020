#include "capmcf/grid.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace capmcf {

GridSpec make_grid(double alpha_x, double beta_x, double alpha_y, double beta_y,
                   int n_x, int n_y) {
    if (!(alpha_x < beta_x) || !(alpha_y < beta_y))
        throw std::invalid_argument("make_grid: bounds must satisfy alpha < beta");
    if (n_x < 3 || n_y < 3)
        throw std::invalid_argument("make_grid: n_x and n_y must be >= 3");
    const double hx = (beta_x - alpha_x) / n_x;
    const double hy = (beta_y - alpha_y) / n_y;
    if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "make_grid: cells not square, x spacing " << hx
            << " vs y spacing " << hy;
        throw std::invalid_argument(msg.str());
    }
    GridSpec g;
    g.alpha_x = alpha_x;
    g.beta_x = beta_x;
    g.alpha_y = alpha_y;
    g.beta_y = beta_y;
    g.n_x = n_x;
    g.n_y = n_y;
    g.dx = hx;
    return g;
}

GhostValues mirror_ghosts(const ScalarField& u) {
    GhostValues gh(u.grid);
    const int nx = u.grid.n_x, ny = u.grid.n_y;
    for (int i = 1; i <= ny; ++i) {
        gh.left[i - 1] = u.at(i, 2);
        gh.right[i - 1] = u.at(i, nx - 1);
    }
    for (int j = 1; j <= nx; ++j) {
        gh.bottom[j - 1] = u.at(2, j);
        gh.top[j - 1] = u.at(ny - 1, j);
    }
    return gh;
}

void central_gradient(const ScalarField& u, const GhostValues& ghosts,
                      ScalarField& gx, ScalarField& gy) {
    const GridSpec& g = u.grid;
    const int nx = g.n_x, ny = g.n_y;
    const double inv2dx = 1.0 / (2.0 * g.dx);
    if (gx.grid.size() != g.size()) gx = ScalarField(g);
    if (gy.grid.size() != g.size()) gy = ScalarField(g);
    for (int i = 1; i <= ny; ++i) {
        for (int j = 1; j <= nx; ++j) {
            const double ujp = (j == nx) ? ghosts.right[i - 1] : u.at(i, j + 1);
            const double ujm = (j == 1) ? ghosts.left[i - 1] : u.at(i, j - 1);
            const double uip = (i == ny) ? ghosts.top[j - 1] : u.at(i + 1, j);
            const double uim = (i == 1) ? ghosts.bottom[j - 1] : u.at(i - 1, j);
            gx.at(i, j) = (ujp - ujm) * inv2dx;
            gy.at(i, j) = (uip - uim) * inv2dx;
        }
    }
}

std::pair<ScalarField, ScalarField> central_gradient(const ScalarField& u) {
    ScalarField gx(u.grid), gy(u.grid);
    central_gradient(u, mirror_ghosts(u), gx, gy);
    return {std::move(gx), std::move(gy)};
}

void dump_field(const ScalarField& u, std::ostream& os) {
    os.precision(17);
    os << u.grid.n_y << ' ' << u.grid.n_x << ' ' << u.grid.dx << '\n';
    for (int i = 1; i <= u.grid.n_y; ++i) {
        for (int j = 1; j <= u.grid.n_x; ++j) {
            if (j > 1) os << ' ';
            os << u.at(i, j);
        }
        os << '\n';
    }
}

void dump_field(const ScalarField& u, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("dump_field: cannot open " + path);
    dump_field(u, os);
    if (!os) throw std::runtime_error("dump_field: write failed for " + path);
}

ScalarField load_field(std::istream& is) {
    int ny = 0, nx = 0;
    double dx = 0.0;
    if (!(is >> ny >> nx >> dx) || ny < 1 || nx < 1 || dx <= 0.0)
        throw std::runtime_error("load_field: bad header");
    GridSpec g;
    g.alpha_x = 0.0;
    g.beta_x = nx * dx;
    g.alpha_y = 0.0;
    g.beta_y = ny * dx;
    g.n_x = nx;
    g.n_y = ny;
    g.dx = dx;
    ScalarField u(g);
    for (double& v : u.values)
        if (!(is >> v)) throw std::runtime_error("load_field: truncated data");
    return u;
}

ScalarField load_field(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_field: cannot open " + path);
    return load_field(is);
}

}  // namespace capmcf
