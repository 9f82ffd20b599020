#include "capmcf/oracle.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace capmcf::oracle {

namespace {

int bit_of(const GridSpec& g, int i, int j) { return (i - 1) * g.n_x + (j - 1); }

bool in_mask(std::uint32_t mask, int bit) { return (mask >> bit) & 1u; }

}  // namespace

ScalarField mask_distance(const GridSpec& grid, std::uint32_t mask) {
    const int n = grid.n_x * grid.n_y;
    const std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1u);
    if (mask == 0u || (mask & full) == full)
        throw std::invalid_argument("mask_distance: E0 must be a proper subset");
    ScalarField d(grid);
    for (int i = 1; i <= grid.n_y; ++i) {
        for (int j = 1; j <= grid.n_x; ++j) {
            const bool inside = in_mask(mask, bit_of(grid, i, j));
            double best = std::numeric_limits<double>::infinity();
            for (int ii = 1; ii <= grid.n_y; ++ii) {
                for (int jj = 1; jj <= grid.n_x; ++jj) {
                    if (in_mask(mask, bit_of(grid, ii, jj)) == inside) continue;
                    const double dxn = (jj - j) * grid.dx;
                    const double dyn = (ii - i) * grid.dx;
                    best = std::min(best, std::hypot(dxn, dyn));
                }
            }
            d.at(i, j) = inside ? -best : best;
        }
    }
    return d;
}

double atw_value(const TinyInstance& inst, std::uint32_t f_mask) {
    const GridSpec& g = inst.grid;
    const double dx = g.dx;
    double perim = 0.0;
    for (int i = 1; i <= g.n_y; ++i) {
        for (int j = 1; j <= g.n_x; ++j) {
            const bool a = in_mask(f_mask, bit_of(g, i, j));
            if (j < g.n_x && a != in_mask(f_mask, bit_of(g, i, j + 1))) perim += dx;
            if (i < g.n_y && a != in_mask(f_mask, bit_of(g, i + 1, j))) perim += dx;
        }
    }
    double boundary = 0.0;  // A_{-beta}: the ring term carries -beta
    for (int k = 0; k < inst.beta.ring_size(); ++k) {
        const auto [i, j] = inst.beta.node(k);
        if (in_mask(f_mask, bit_of(g, i, j))) boundary -= inst.beta.values[k];
    }
    const ScalarField d = mask_distance(g, inst.e0_mask);
    double sym = 0.0;
    for (int i = 1; i <= g.n_y; ++i) {
        for (int j = 1; j <= g.n_x; ++j) {
            const int b = bit_of(g, i, j);
            if (in_mask(f_mask, b) != in_mask(inst.e0_mask, b))
                sym += std::abs(d.at(i, j));
        }
    }
    return perim + boundary * dx + inst.lambda_atw * sym * dx * dx;
}

std::vector<std::uint32_t> brute_force_atw(const TinyInstance& inst) {
    const int n = inst.grid.n_x * inst.grid.n_y;
    if (n > 25) throw std::runtime_error("brute_force_atw: enumeration cap exceeded");
    const std::uint64_t count = 1ull << n;
    // Precompute the per-node terms so the scan is cheap.
    const GridSpec& g = inst.grid;
    const double dx = g.dx;
    const ScalarField d = mask_distance(g, inst.e0_mask);
    std::vector<double> node_term(n, 0.0);
    for (int i = 1; i <= g.n_y; ++i) {
        for (int j = 1; j <= g.n_x; ++j) {
            const int b = bit_of(g, i, j);
            const double sgn = in_mask(inst.e0_mask, b) ? -1.0 : 1.0;
            node_term[b] += sgn * inst.lambda_atw * std::abs(d.at(i, j)) * dx * dx;
        }
    }
    for (int k = 0; k < inst.beta.ring_size(); ++k) {
        const auto [i, j] = inst.beta.node(k);
        node_term[bit_of(g, i, j)] -= inst.beta.values[k] * dx;
    }
    const double base = [&] {
        double s = 0.0;
        for (int i = 1; i <= g.n_y; ++i)
            for (int j = 1; j <= g.n_x; ++j) {
                const int b = bit_of(g, i, j);
                if (in_mask(inst.e0_mask, b))
                    s += inst.lambda_atw * std::abs(d.at(i, j)) * dx * dx;
            }
        return s;
    }();

    std::vector<std::uint32_t> best_masks;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t m = 0; m < count; ++m) {
        const std::uint32_t mask = static_cast<std::uint32_t>(m);
        double perim = 0.0;
        double linear = 0.0;
        for (int i = 1; i <= g.n_y; ++i) {
            for (int j = 1; j <= g.n_x; ++j) {
                const int b = bit_of(g, i, j);
                const bool a = in_mask(mask, b);
                if (a) linear += node_term[b];
                if (j < g.n_x && a != in_mask(mask, bit_of(g, i, j + 1))) perim += dx;
                if (i < g.n_y && a != in_mask(mask, bit_of(g, i + 1, j))) perim += dx;
            }
        }
        const double value = perim + linear + base;
        if (value < best - 1e-9) {
            best = value;
            best_masks.assign(1, mask);
        } else if (value <= best + 1e-9) {
            best = std::min(best, value);
            best_masks.push_back(mask);
        }
    }
    return best_masks;
}

namespace {

struct Edge {
    int a, b;  // node bits, value difference u[b] - u[a]
};

std::vector<Edge> grid_edges(const GridSpec& g) {
    std::vector<Edge> edges;
    for (int i = 1; i <= g.n_y; ++i)
        for (int j = 1; j <= g.n_x; ++j) {
            if (j < g.n_x) edges.push_back({bit_of(g, i, j), bit_of(g, i, j + 1)});
            if (i < g.n_y) edges.push_back({bit_of(g, i, j), bit_of(g, i + 1, j)});
        }
    return edges;
}

std::vector<double> ring_linear_term(const BoundaryField& beta) {
    const GridSpec& g = beta.grid;
    std::vector<double> c(g.size(), 0.0);
    for (int k = 0; k < beta.ring_size(); ++k) {
        const auto [i, j] = beta.node(k);
        c[bit_of(g, i, j)] += beta.values[k] * g.dx;
    }
    return c;
}

}  // namespace

ScalarField tiny_convex_solve(const TinyInstance& inst, double gap_tol,
                              long max_iters) {
    const GridSpec& g = inst.grid;
    const int n = g.n_x * g.n_y;
    const double dx = g.dx;
    const double w_edge = dx;                       // ell^1 perimeter weight
    const double alpha = inst.lambda_atw * dx * dx; // per-node quadratic weight
    const ScalarField f = mask_distance(g, inst.e0_mask);
    const std::vector<double> c = ring_linear_term(inst.beta);
    const std::vector<Edge> edges = grid_edges(g);

    std::vector<double> p(edges.size(), 0.0);
    std::vector<double> u(f.values), q(n, 0.0);
    const double tau = alpha / 8.0;

    const auto compute_u = [&] {
        std::fill(q.begin(), q.end(), 0.0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            q[edges[e].b] += p[e];
            q[edges[e].a] -= p[e];
        }
        for (int k = 0; k < n; ++k) u[k] = f.values[k] - (q[k] + c[k]) / alpha;
    };
    const auto primal = [&] {
        double val = 0.0;
        for (const Edge& e : edges) val += w_edge * std::abs(u[e.b] - u[e.a]);
        for (int k = 0; k < n; ++k) {
            const double r = u[k] - f.values[k];
            val += c[k] * u[k] + 0.5 * alpha * r * r;
        }
        return val;
    };
    const auto dual = [&] {
        // g(p) = <q + c, f> - |q + c|^2 / (2 alpha), valid for p in the box.
        double val = 0.0;
        for (int k = 0; k < n; ++k) {
            const double qc = q[k] + c[k];
            val += qc * f.values[k] - qc * qc / (2.0 * alpha);
        }
        return val;
    };

    compute_u();
    for (long it = 0; it < max_iters; ++it) {
        for (std::size_t e = 0; e < edges.size(); ++e) {
            double pe = p[e] + tau * (u[edges[e].b] - u[edges[e].a]);
            p[e] = std::clamp(pe, -w_edge, w_edge);
        }
        compute_u();
        if ((it & 255) == 0 && primal() - dual() < gap_tol) break;
    }
    if (primal() - dual() >= gap_tol)
        throw std::runtime_error("tiny_convex_solve: projected gradient did not reach gap tolerance");
    ScalarField out(g);
    out.values = u;
    return out;
}

ScalarField convex_prox_oracle(const ScalarField& f, const BoundaryField& beta,
                               double mu, double gap_tol, long max_iters) {
    const GridSpec& g = f.grid;
    const int nx = g.n_x, ny = g.n_y, n = nx * ny;
    const double dx = g.dx, dx2 = dx * dx;
    const double alpha = mu * dx2;
    const std::vector<double> c = ring_linear_term(beta);

    std::vector<double> px(n, 0.0), py(n, 0.0), u(f.values), q(n, 0.0);
    const double inv2dx = 1.0 / (2.0 * dx);
    const double tau = 0.9 * mu / 2.0;

    // Central differences with the mirror closure are zero on the extreme
    // rows/columns, so interior nodes are the only dual contributors.
    const auto compute_u = [&] {
        std::fill(q.begin(), q.end(), 0.0);
        for (int i = 1; i <= ny; ++i) {
            for (int j = 2; j <= nx - 1; ++j) {
                const double s = px[bit_of(g, i, j)] * dx2 * inv2dx;
                q[bit_of(g, i, j + 1)] += s;
                q[bit_of(g, i, j - 1)] -= s;
            }
        }
        for (int i = 2; i <= ny - 1; ++i) {
            for (int j = 1; j <= nx; ++j) {
                const double s = py[bit_of(g, i, j)] * dx2 * inv2dx;
                q[bit_of(g, i + 1, j)] += s;
                q[bit_of(g, i - 1, j)] -= s;
            }
        }
        for (int k = 0; k < n; ++k) u[k] = f.values[k] - (q[k] + c[k]) / alpha;
    };
    const auto grad_at = [&](int i, int j, double& gx, double& gy) {
        gx = (j > 1 && j < nx) ? (u[bit_of(g, i, j + 1)] - u[bit_of(g, i, j - 1)]) * inv2dx : 0.0;
        gy = (i > 1 && i < ny) ? (u[bit_of(g, i + 1, j)] - u[bit_of(g, i - 1, j)]) * inv2dx : 0.0;
    };
    const auto primal = [&] {
        double val = 0.0;
        for (int i = 1; i <= ny; ++i)
            for (int j = 1; j <= nx; ++j) {
                double gx, gy;
                grad_at(i, j, gx, gy);
                val += std::sqrt(gx * gx + gy * gy) * dx2;
            }
        for (int k = 0; k < n; ++k) {
            const double r = u[k] - f.values[k];
            val += c[k] * u[k] + 0.5 * alpha * r * r;
        }
        return val;
    };
    const auto dual = [&] {
        double val = 0.0;
        for (int k = 0; k < n; ++k) {
            const double qc = q[k] + c[k];
            val += qc * f.values[k] - qc * qc / (2.0 * alpha);
        }
        return val;
    };

    compute_u();
    for (long it = 0; it < max_iters; ++it) {
        for (int i = 1; i <= ny; ++i) {
            for (int j = 1; j <= nx; ++j) {
                double gx, gy;
                grad_at(i, j, gx, gy);
                const int k = bit_of(g, i, j);
                double nx_ = px[k] + tau * gx * dx2;
                double ny_ = py[k] + tau * gy * dx2;
                const double norm = std::sqrt(nx_ * nx_ + ny_ * ny_);
                if (norm > 1.0) {
                    nx_ /= norm;
                    ny_ /= norm;
                }
                px[k] = nx_;
                py[k] = ny_;
            }
        }
        compute_u();
        if ((it & 255) == 0 && primal() - dual() < gap_tol) break;
    }
    if (primal() - dual() >= gap_tol)
        throw std::runtime_error("convex_prox_oracle: projected gradient did not reach gap tolerance");
    ScalarField out(g);
    out.values = u;
    return out;
}

ScalarField direct_linear_solve(const ScalarField& f, const ScalarField& d_x,
                                const ScalarField& d_y, const ScalarField& b_x,
                                const ScalarField& b_y, const BoundaryField& beta,
                                const SolverParams& params) {
    const GridSpec& g = f.grid;
    if (g.n_x > 64 || g.n_y > 64)
        throw std::invalid_argument("direct_linear_solve: grid capped at 64x64");
    const int nx = g.n_x, ny = g.n_y, n = nx * ny;
    const double dx = g.dx, dx2 = dx * dx;
    const double lambda = params.lambda, mu = params.mu;

    // div(d - b), central differences, mirror closure. Independent of the
    // iterative path on purpose.
    std::vector<double> div(n, 0.0);
    const auto P = [&](int i, int j, const ScalarField& da, const ScalarField& ba) {
        return da.at(i, j) - ba.at(i, j);
    };
    for (int i = 1; i <= ny; ++i)
        for (int j = 2; j <= nx - 1; ++j)
            div[bit_of(g, i, j)] +=
                (P(i, j + 1, d_x, b_x) - P(i, j - 1, d_x, b_x)) / (2.0 * dx);
    for (int i = 2; i <= ny - 1; ++i)
        for (int j = 1; j <= nx; ++j)
            div[bit_of(g, i, j)] +=
                (P(i + 1, j, d_y, b_y) - P(i - 1, j, d_y, b_y)) / (2.0 * dx);

    using Trip = Eigen::Triplet<double>;
    std::vector<Trip> trips;
    Eigen::VectorXd rhs(n);
    const double diag = mu * dx2 + 4.0 * lambda;
    constexpr double rt2 = 1.4142135623730951;

    for (int i = 1; i <= ny; ++i) {
        for (int j = 1; j <= nx; ++j) {
            const int row = bit_of(g, i, j);
            trips.emplace_back(row, row, diag);
            rhs(row) = dx2 * (mu * f.at(i, j) - lambda * div[row]);
            const bool corner = (i == 1 || i == ny) && (j == 1 || j == nx);
            if (corner) {
                const int mi = (i == 1) ? 2 : ny - 1;
                const int mj = (j == 1) ? 2 : nx - 1;
                trips.emplace_back(row, bit_of(g, mi, j), -2.0 * lambda);
                trips.emplace_back(row, bit_of(g, i, mj), -2.0 * lambda);
                const double sx = (j == 1) ? 1.0 : -1.0;  // sign of +d_x term
                const double sy = (i == 1) ? 1.0 : -1.0;
                // Ghost-pair sum correction from the diagonal corner normal.
                const double corr =
                    -2.0 * dx *
                    (sx * (d_x.at(i, j) - b_x.at(i, j)) +
                     sy * (d_y.at(i, j) - b_y.at(i, j)) + rt2 * beta.at(i, j) / lambda);
                rhs(row) += lambda * corr;
                continue;
            }
            // x neighbors
            if (j > 1) trips.emplace_back(row, bit_of(g, i, j - 1), -lambda);
            if (j < nx) trips.emplace_back(row, bit_of(g, i, j + 1), -lambda);
            if (j == 1) {
                trips.emplace_back(row, bit_of(g, i, 2), -lambda);
                rhs(row) += lambda * (-2.0 * dx) *
                            (d_x.at(i, 1) - b_x.at(i, 1) + beta.at(i, 1) / lambda);
            } else if (j == nx) {
                trips.emplace_back(row, bit_of(g, i, nx - 1), -lambda);
                rhs(row) += lambda * (2.0 * dx) *
                            (d_x.at(i, nx) - b_x.at(i, nx) - beta.at(i, nx) / lambda);
            }
            // y neighbors
            if (i > 1) trips.emplace_back(row, bit_of(g, i - 1, j), -lambda);
            if (i < ny) trips.emplace_back(row, bit_of(g, i + 1, j), -lambda);
            if (i == 1) {
                trips.emplace_back(row, bit_of(g, 2, j), -lambda);
                rhs(row) += lambda * (-2.0 * dx) *
                            (d_y.at(1, j) - b_y.at(1, j) + beta.at(1, j) / lambda);
            } else if (i == ny) {
                trips.emplace_back(row, bit_of(g, ny - 1, j), -lambda);
                rhs(row) += lambda * (2.0 * dx) *
                            (d_y.at(ny, j) - b_y.at(ny, j) - beta.at(ny, j) / lambda);
            }
        }
    }

    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("direct_linear_solve: factorization failed");
    const Eigen::VectorXd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("direct_linear_solve: solve failed");
    ScalarField out(g);
    for (int k = 0; k < n; ++k) out.values[k] = x(k);
    return out;
}

double grim_reaper_profile(double x, double t) {
    const double pi = std::numbers::pi;
    const double xc = std::clamp(x, 0.0, 2.0);
    const double cosv = std::cos(-pi * xc / 4.0 + pi / 4.0);
    return (4.0 / pi) * std::log(std::abs(cosv)) + 0.5 + (2.0 / pi) * std::log(2.0) -
           (pi / 4.0) * t;
}

std::optional<double> circle_radius(double r0, double t) {
    if (t >= r0 * r0 / 2.0) return std::nullopt;
    return std::sqrt(r0 * r0 - 2.0 * t);
}

}  // namespace capmcf::oracle
