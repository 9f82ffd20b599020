#include "capmcf/bregman.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "capmcf/capillary.hpp"

namespace capmcf {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Ghost values outside each wall, from the discrete boundary condition
//   grad(u) . n = (d - b) . n - beta/lambda * |n|-scaling,
// combined with the central difference across the wall node.
struct GhostRule {
    const ScalarField& u;
    const ScalarField& d_x;
    const ScalarField& d_y;
    const ScalarField& b_x;
    const ScalarField& b_y;
    const BoundaryField& beta;
    double lambda;
    double two_dx;

    // Corner corrections c so that ghost_pair_sum = mirror_sum + c.
    double corner_correction(int ci, int cj) const {
        const double dxv = d_x.at(ci, cj), dyv = d_y.at(ci, cj);
        const double bxv = b_x.at(ci, cj), byv = b_y.at(ci, cj);
        const double bb = kSqrt2 * beta.at(ci, cj) / lambda;
        const int ny = u.grid.n_y, nx = u.grid.n_x;
        if (ci == 1 && cj == 1) return -two_dx * (dxv - bxv + dyv - byv + bb);
        if (ci == 1 && cj == nx) return two_dx * (dxv - bxv - dyv + byv - bb);
        if (ci == ny && cj == 1) return two_dx * (-dxv + bxv + dyv - byv - bb);
        return two_dx * (dxv - bxv + dyv - byv - bb);  // (ny, nx)
    }

    double left(int i) const {  // u_{i,0}
        const int ny = u.grid.n_y;
        if (i == 1) return u.at(1, 2) + 0.5 * corner_correction(1, 1);
        if (i == ny) return u.at(ny, 2) + 0.5 * corner_correction(ny, 1);
        return u.at(i, 2) -
               two_dx * (d_x.at(i, 1) - b_x.at(i, 1) + beta.at(i, 1) / lambda);
    }
    double right(int i) const {  // u_{i,n_x+1}
        const int ny = u.grid.n_y, nx = u.grid.n_x;
        if (i == 1) return u.at(1, nx - 1) + 0.5 * corner_correction(1, nx);
        if (i == ny) return u.at(ny, nx - 1) + 0.5 * corner_correction(ny, nx);
        return u.at(i, nx - 1) +
               two_dx * (d_x.at(i, nx) - b_x.at(i, nx) - beta.at(i, nx) / lambda);
    }
    double bottom(int j) const {  // u_{0,j}
        const int nx = u.grid.n_x;
        if (j == 1) return u.at(2, 1) + 0.5 * corner_correction(1, 1);
        if (j == nx) return u.at(2, nx) + 0.5 * corner_correction(1, nx);
        return u.at(2, j) -
               two_dx * (d_y.at(1, j) - b_y.at(1, j) + beta.at(1, j) / lambda);
    }
    double top(int j) const {  // u_{n_y+1,j}
        const int ny = u.grid.n_y, nx = u.grid.n_x;
        if (j == 1) return u.at(ny - 1, 1) + 0.5 * corner_correction(ny, 1);
        if (j == nx) return u.at(ny - 1, nx) + 0.5 * corner_correction(ny, nx);
        return u.at(ny - 1, j) +
               two_dx * (d_y.at(ny, j) - b_y.at(ny, j) - beta.at(ny, j) / lambda);
    }
};

GhostRule make_rule(const BregmanState& s, const BoundaryField& beta, double lambda) {
    return GhostRule{s.u, s.d_x, s.d_y, s.b_x, s.b_y, beta, lambda, 2.0 * s.u.grid.dx};
}

// Central gradient of u with the capillary ghost closure, written into gx, gy.
void capillary_gradient(const BregmanState& s, const BoundaryField& beta,
                        double lambda, ScalarField& gx, ScalarField& gy) {
    const GridSpec& g = s.u.grid;
    const GhostRule rule = make_rule(s, beta, lambda);
    const int nx = g.n_x, ny = g.n_y;
    const double inv2dx = 1.0 / (2.0 * g.dx);
    if (gx.values.size() != g.size()) gx = ScalarField(g);
    if (gy.values.size() != g.size()) gy = ScalarField(g);
    for (int i = 1; i <= ny; ++i) {
        for (int j = 1; j <= nx; ++j) {
            const double ujp = (j == nx) ? rule.right(i) : s.u.at(i, j + 1);
            const double ujm = (j == 1) ? rule.left(i) : s.u.at(i, j - 1);
            const double uip = (i == ny) ? rule.top(j) : s.u.at(i + 1, j);
            const double uim = (i == 1) ? rule.bottom(j) : s.u.at(i - 1, j);
            gx.at(i, j) = (ujp - ujm) * inv2dx;
            gy.at(i, j) = (uip - uim) * inv2dx;
        }
    }
}

}  // namespace

SolverParams SolverParams::for_time_step(double h) {
    if (h <= 0.0) throw std::invalid_argument("SolverParams: h must be > 0");
    SolverParams p;
    p.h = h;
    p.mu = 1.0 / h;
    return p;
}

std::pair<double, double> shrink_value(double vx, double vy, double lambda,
                                       ShrinkVariant variant) {
    const double s = std::sqrt(vx * vx + vy * vy);
    if (s == 0.0) return {0.0, 0.0};
    double factor = 0.0;
    if (variant == ShrinkVariant::Paper) {
        factor = s * lambda / (s * lambda + 1.0);
    } else {
        factor = std::max(s - 1.0 / lambda, 0.0) / s;
    }
    return {factor * vx, factor * vy};
}

void shrink_step(BregmanState& state, const BoundaryField& beta, double lambda,
                 ShrinkVariant variant) {
    ScalarField gx(state.u.grid), gy(state.u.grid);
    capillary_gradient(state, beta, lambda, gx, gy);
    for (std::size_t k = 0; k < gx.values.size(); ++k) {
        const double vx = gx.values[k] + state.b_x.values[k];
        const double vy = gy.values[k] + state.b_y.values[k];
        const auto [dxv, dyv] = shrink_value(vx, vy, lambda, variant);
        state.d_x.values[k] = dxv;
        state.d_y.values[k] = dyv;
    }
}

GhostValues capillary_ghosts(const BregmanState& state, const BoundaryField& beta,
                             double lambda) {
    const GhostRule rule = make_rule(state, beta, lambda);
    GhostValues gh(state.u.grid);
    for (int i = 1; i <= state.u.grid.n_y; ++i) {
        gh.left[i - 1] = rule.left(i);
        gh.right[i - 1] = rule.right(i);
    }
    for (int j = 1; j <= state.u.grid.n_x; ++j) {
        gh.bottom[j - 1] = rule.bottom(j);
        gh.top[j - 1] = rule.top(j);
    }
    return gh;
}

std::array<double, 4> corner_ghost_sums(const BregmanState& state,
                                        const BoundaryField& beta, double lambda) {
    const GhostRule rule = make_rule(state, beta, lambda);
    const ScalarField& u = state.u;
    const int nx = u.grid.n_x, ny = u.grid.n_y;
    return {
        u.at(2, 1) + u.at(1, 2) + rule.corner_correction(1, 1),
        u.at(2, nx) + u.at(1, nx - 1) + rule.corner_correction(1, nx),
        u.at(ny, 2) + u.at(ny - 1, 1) + rule.corner_correction(ny, 1),
        u.at(ny, nx - 1) + u.at(ny - 1, nx) + rule.corner_correction(ny, nx),
    };
}

double u_update(BregmanState& state, const ScalarField& f,
                const BoundaryField& beta, const SolverParams& params) {
    const GridSpec& g = f.grid;
    const int nx = g.n_x, ny = g.n_y;
    const double dx = g.dx, dx2 = dx * dx;
    const double lambda = params.lambda, mu = params.mu;
    const double denom = mu * dx2 + 4.0 * lambda;

    // div(d - b) with central differences; mirror closure for d and b.
    ScalarField px(g), py(g), div(g);
    for (std::size_t k = 0; k < px.values.size(); ++k) {
        px.values[k] = state.d_x.values[k] - state.b_x.values[k];
        py.values[k] = state.d_y.values[k] - state.b_y.values[k];
    }
    {
        ScalarField tx(g), ty(g);
        central_gradient(px, mirror_ghosts(px), tx, ty);
        for (std::size_t k = 0; k < div.values.size(); ++k)
            div.values[k] = tx.values[k];
        central_gradient(py, mirror_ghosts(py), tx, ty);
        for (std::size_t k = 0; k < div.values.size(); ++k)
            div.values[k] += ty.values[k];
    }

    const GhostRule rule = make_rule(state, beta, lambda);
    ScalarField& u = state.u;
    double sq = 0.0;
    for (int i = 1; i <= ny; ++i) {
        for (int j = 1; j <= nx; ++j) {
            const double ujp = (j == nx) ? rule.right(i) : u.at(i, j + 1);
            const double ujm = (j == 1) ? rule.left(i) : u.at(i, j - 1);
            const double uip = (i == ny) ? rule.top(j) : u.at(i + 1, j);
            const double uim = (i == 1) ? rule.bottom(j) : u.at(i - 1, j);
            const double rhs = lambda * (uip + uim + ujp + ujm) +
                               dx2 * (mu * f.at(i, j) - lambda * div.at(i, j));
            const double next = rhs / denom;
            const double delta = next - u.at(i, j);
            sq += delta * delta;
            u.at(i, j) = next;
        }
    }
    return std::sqrt(sq * dx2);
}

void b_update(BregmanState& state, const BoundaryField& beta, double lambda) {
    ScalarField gx(state.u.grid), gy(state.u.grid);
    capillary_gradient(state, beta, lambda, gx, gy);
    for (std::size_t k = 0; k < gx.values.size(); ++k) {
        state.b_x.values[k] += gx.values[k] - state.d_x.values[k];
        state.b_y.values[k] += gy.values[k] - state.d_y.values[k];
    }
}

SolveResult solve_subproblem(const ScalarField& f, const BoundaryField& beta,
                             const SolverParams& params, std::ostream* diagnostics) {
    if (params.h <= 0.0 || params.mu <= 0.0 || params.lambda <= 0.0 ||
        params.tol <= 0.0)
        throw std::invalid_argument("solve_subproblem: invalid solver parameters");
    BregmanState state(f);
    const double stop = params.tol * params.h;
    SolveResult out;
    while (state.iteration < params.max_iters) {
        ++state.iteration;
        shrink_step(state, beta, params.lambda, params.shrink);
        const double residual = u_update(state, f, beta, params);
        b_update(state, beta, params.lambda);
        out.residual = residual;
        if (diagnostics) {
            (*diagnostics) << state.iteration << ' ' << residual << ' '
                           << chambolle_energy(state.u, f, beta, params.h) << '\n';
        }
        if (residual < stop) {
            out.converged = true;
            break;
        }
    }
    out.iterations = state.iteration;
    if (!out.converged && diagnostics) {
        (*diagnostics) << "# warning: max_iters=" << params.max_iters
                       << " reached, residual=" << out.residual << '\n';
    }
    out.u = std::move(state.u);
    return out;
}

}  // namespace capmcf
