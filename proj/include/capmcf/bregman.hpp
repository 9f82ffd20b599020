// Split Bregman minimizer of the capillary Chambolle energy
//   C_beta(u) + (1/2h) ||u - f||^2
// with ghost-point contact-angle boundary conditions.
#pragma once

#include <array>
#include <iosfwd>
#include <utility>

#include "capmcf/boundary.hpp"
#include "capmcf/grid.hpp"

namespace capmcf {

enum class ShrinkVariant {
    Paper,     // d = s*lambda*v / (s*lambda + 1), s = |v|
    Standard,  // d = v/|v| * max(|v| - 1/lambda, 0)
};

struct SolverParams {
    double h = 0.0;       // time step
    double mu = 0.0;      // fidelity weight, 1/h
    double lambda = 1.0;  // splitting weight
    // Stopping tolerance on the update norm per unit time step:
    // stop once ||u^k - u^{k-1}||_{L2,dx^2} < tol * h.
    double tol = 1e-3;
    int max_iters = 2000;
    ShrinkVariant shrink = ShrinkVariant::Standard;

    static SolverParams for_time_step(double h);
};

struct BregmanState {
    ScalarField u, d_x, d_y, b_x, b_y;
    int iteration = 0;

    explicit BregmanState(const ScalarField& f)
        : u(f), d_x(f.grid), d_y(f.grid), b_x(f.grid), b_y(f.grid) {}
};

// Pointwise shrink of v = grad(u) + b.
std::pair<double, double> shrink_value(double vx, double vy, double lambda,
                                       ShrinkVariant variant);

// d = shrink(grad(u) + b) over the whole field; boundary gradients use the
// capillary ghosts for the current (d, b).
void shrink_step(BregmanState& state, const BoundaryField& beta, double lambda,
                 ShrinkVariant variant);

// Ghost values outside the four walls from the boundary Euler-Lagrange
// relation; corners use the diagonal normals with the symmetric half/half
// split of the constrained ghost-pair sum.
GhostValues capillary_ghosts(const BregmanState& state, const BoundaryField& beta,
                             double lambda);

// The four constrained corner ghost-pair sums, order: (1,1), (1,n_x),
// (n_y,1), (n_y,n_x).
std::array<double, 4> corner_ghost_sums(const BregmanState& state,
                                        const BoundaryField& beta, double lambda);

// One in-place lexicographic Gauss-Seidel sweep of the u subproblem
//   (mu - lambda Laplace) u = mu f - lambda div(d - b),
// ghost values evaluated on the fly. Returns ||u_new - u_old||_{L2,dx^2}.
double u_update(BregmanState& state, const ScalarField& f,
                const BoundaryField& beta, const SolverParams& params);

// b <- b + (grad(u) - d), central differences with the capillary ghosts.
void b_update(BregmanState& state, const BoundaryField& beta, double lambda);

struct SolveResult {
    ScalarField u;
    int iterations = 0;
    double residual = 0.0;  // last ||u^k - u^{k-1}||_{L2,dx^2}
    bool converged = false;
};

// Full split Bregman loop: shrink -> u sweep -> b update, starting from
// u = f, d = b = 0, until the update norm drops below tol*h or max_iters is
// reached (then converged=false and the residual is reported). When
// diagnostics is non-null one line "iter residual energy" per iteration is
// streamed.
SolveResult solve_subproblem(const ScalarField& f, const BoundaryField& beta,
                             const SolverParams& params,
                             std::ostream* diagnostics = nullptr);

}  // namespace capmcf
