// Independent ground-truth implementations used by tests and acceptance:
// subset enumeration for the discrete capillary ATW functional, a dual
// projected-gradient convex solver, a direct solve of the u subproblem, and
// the analytic benchmark profiles.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "capmcf/boundary.hpp"
#include "capmcf/bregman.hpp"
#include "capmcf/grid.hpp"

namespace capmcf::oracle {

// Tiny grid instance for exhaustive minimization. Node (i,j) maps to bit
// (i-1)*n_x + (j-1) of a mask. The discrete ATW value of a subset F is
//   P1(F) - sum_ring beta * chi_F * dx + lambda_atw * sum_{F sym E0} |d| dx^2
// with P1 the edge-counting (ell^1) perimeter (interior edges, weight dx)
// and d the signed Euclidean node-set distance of E0 (negative inside).
struct TinyInstance {
    GridSpec grid;
    std::uint32_t e0_mask = 0;
    BoundaryField beta;
    double lambda_atw = 1.0;
};

// Signed node-set distance of the mask: -min distance to a node outside E0
// inside, +min distance to a node of E0 outside. Throws for empty/full E0.
ScalarField mask_distance(const GridSpec& grid, std::uint32_t mask);

double atw_value(const TinyInstance& inst, std::uint32_t f_mask);

// All subsets minimizing the ATW value, ties within 1e-9 of the minimum.
// Throws when 2^(n_x*n_y) exceeds the 2^25 enumeration cap.
std::vector<std::uint32_t> brute_force_atw(const TinyInstance& inst);

// Minimizer of the matching anisotropic convex energy
//   TV1(u) + sum_ring beta u dx + (lambda_atw/2) sum (u - f)^2 dx^2
// by projected gradient on the edge-dual problem, run until the primal-dual
// gap falls below gap_tol (absolute, energy units).
ScalarField tiny_convex_solve(const TinyInstance& inst, double gap_tol = 1e-10,
                              long max_iters = 4000000);

// Minimizer of the isotropic production energy
//   TV_c(u) + sum_ring beta u dx + (mu/2) sum (u - f)^2 dx^2
// with central-difference gradients (mirror closure), by projected gradient
// on the per-node disk dual.
ScalarField convex_prox_oracle(const ScalarField& f, const BoundaryField& beta,
                               double mu, double gap_tol = 1e-8,
                               long max_iters = 2000000);

// Exact solve of the linear u subproblem
//   (mu - lambda Laplace) u = mu f - lambda div(d - b)
// with the capillary ghost closure, assembled independently of the
// Gauss-Seidel path. Grid capped at 64x64.
ScalarField direct_linear_solve(const ScalarField& f, const ScalarField& d_x,
                                const ScalarField& d_y, const ScalarField& b_x,
                                const ScalarField& b_y, const BoundaryField& beta,
                                const SolverParams& params);

// Translating-soliton graph on the strip 0 < x < 2:
//   y = (4/pi) log|cos(-pi x/4 + pi/4)| + 1/2 + (2/pi) log 2 - (pi/4) t.
// x is clamped into [0, 2].
double grim_reaper_profile(double x, double t);
inline constexpr double grim_reaper_speed = 0.78539816339744831;  // pi/4

// Radius of a circle under curvature flow; empty once extinct (t >= r0^2/2).
std::optional<double> circle_radius(double r0, double t);

}  // namespace capmcf::oracle
