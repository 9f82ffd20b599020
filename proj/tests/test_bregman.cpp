#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "capmcf/bregman.hpp"
#include "capmcf/capillary.hpp"
#include "capmcf/oracle.hpp"

using namespace capmcf;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752;

ScalarField disk_distance(const GridSpec& g, double r0) {
    ScalarField f(g);
    for (int i = 1; i <= g.n_y; ++i)
        for (int j = 1; j <= g.n_x; ++j)
            f.at(i, j) = std::hypot(g.x_of(j), g.y_of(i)) - r0;
    return f;
}

}  // namespace

TEST_CASE("shrink_value matches the closed forms") {
    SUBCASE("zero input") {
        const auto [dx0, dy0] = shrink_value(0, 0, 1.0, ShrinkVariant::Paper);
        CHECK(dx0 == 0.0);
        CHECK(dy0 == 0.0);
        const auto [sx0, sy0] = shrink_value(0, 0, 1.0, ShrinkVariant::Standard);
        CHECK(sx0 == 0.0);
        CHECK(sy0 == 0.0);
    }
    SUBCASE("paper formula, unit vector") {
        const auto [dx1, dy1] = shrink_value(1, 0, 1.0, ShrinkVariant::Paper);
        CHECK(dx1 == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(dy1 == 0.0);
    }
    SUBCASE("paper formula, lambda 2 and v=(3,4)") {
        const auto [dx2, dy2] = shrink_value(3, 4, 2.0, ShrinkVariant::Paper);
        CHECK(dx2 == doctest::Approx(30.0 / 11.0).epsilon(1e-15));
        CHECK(dy2 == doctest::Approx(40.0 / 11.0).epsilon(1e-15));
    }
    SUBCASE("standard soft shrink") {
        const auto [dx3, dy3] = shrink_value(3, 4, 2.0, ShrinkVariant::Standard);
        // |v| = 5, keep (5 - 0.5)/5 of v
        CHECK(dx3 == doctest::Approx(2.7).epsilon(1e-15));
        CHECK(dy3 == doctest::Approx(3.6).epsilon(1e-15));
        const auto [dx4, dy4] = shrink_value(0.2, 0.1, 2.0, ShrinkVariant::Standard);
        CHECK(dx4 == 0.0);  // below the threshold
        CHECK(dy4 == 0.0);
    }
}

TEST_CASE("ghost edges reduce to mirrors for beta = 0 and encode beta otherwise") {
    const GridSpec g = make_grid(0, 1, 0, 1, 8, 8);
    ScalarField f(g);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1, 1);
    for (auto& v : f.values) v = dist(rng);
    BregmanState st(f);  // d = b = 0

    SUBCASE("pure Neumann mirror at beta = 0") {
        const GhostValues gh = capillary_ghosts(st, BoundaryField(g), 1.0);
        for (int i = 2; i <= g.n_y - 1; ++i) {
            CHECK(gh.left[i - 1] == doctest::Approx(st.u.at(i, 2)).epsilon(1e-15));
            CHECK(gh.right[i - 1] ==
                  doctest::Approx(st.u.at(i, g.n_x - 1)).epsilon(1e-15));
        }
        for (int j = 2; j <= g.n_x - 1; ++j) {
            CHECK(gh.bottom[j - 1] == doctest::Approx(st.u.at(2, j)).epsilon(1e-15));
            CHECK(gh.top[j - 1] ==
                  doctest::Approx(st.u.at(g.n_y - 1, j)).epsilon(1e-15));
        }
    }
    SUBCASE("left wall with beta = -1/sqrt(2)") {
        const BoundaryField beta =
            BoundaryField::from_walls(g, -kInvSqrt2, 0, 0, 0);
        const GhostValues gh = capillary_ghosts(st, beta, 1.0);
        for (int i = 2; i <= g.n_y - 1; ++i)
            CHECK(gh.left[i - 1] ==
                  doctest::Approx(st.u.at(i, 2) + std::sqrt(2.0) * g.dx)
                      .epsilon(1e-13));
    }
    SUBCASE("bottom wall with beta = +1/sqrt(2)") {
        const BoundaryField beta = BoundaryField::from_walls(g, 0, 0, kInvSqrt2, 0);
        const GhostValues gh = capillary_ghosts(st, beta, 1.0);
        for (int j = 2; j <= g.n_x - 1; ++j)
            CHECK(gh.bottom[j - 1] ==
                  doctest::Approx(st.u.at(2, j) - std::sqrt(2.0) * g.dx)
                      .epsilon(1e-13));
    }
}

TEST_CASE("corner ghost sums satisfy the displayed constraints") {
    const GridSpec g = make_grid(0, 1, 0, 1, 6, 6);
    ScalarField f(g);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> dist(-1, 1);
    for (auto& v : f.values) v = dist(rng);
    BregmanState st(f);

    SUBCASE("homogeneous case: mirror sum") {
        const auto sums = corner_ghost_sums(st, BoundaryField(g), 1.0);
        CHECK(sums[0] == doctest::Approx(st.u.at(2, 1) + st.u.at(1, 2)).epsilon(1e-15));
    }
    SUBCASE("corner beta enters through the diagonal normal") {
        BoundaryField beta(g);
        beta.at(1, 1) = -kInvSqrt2;
        const auto sums = corner_ghost_sums(st, beta, 1.0);
        // -2dx * sqrt(2) * beta = +2dx
        CHECK(sums[0] == doctest::Approx(st.u.at(2, 1) + st.u.at(1, 2) + 2.0 * g.dx)
                             .epsilon(1e-13));
    }
    SUBCASE("symmetric split reproduces the sum") {
        BoundaryField beta(g);
        beta.at(1, 1) = 0.3;
        for (auto& v : st.d_x.values) v = 0.17;
        for (auto& v : st.b_y.values) v = -0.05;
        const auto sums = corner_ghost_sums(st, beta, 1.3);
        const GhostValues gh = capillary_ghosts(st, beta, 1.3);
        CHECK(gh.bottom[0] + gh.left[0] == doctest::Approx(sums[0]).epsilon(1e-13));
        CHECK(gh.bottom[0] - st.u.at(2, 1) ==
              doctest::Approx(gh.left[0] - st.u.at(1, 2)).epsilon(1e-13));
    }
}

TEST_CASE("u_update keeps the exact constant fixed point") {
    const GridSpec g = make_grid(0, 1, 0, 1, 8, 8);
    const double c = 3.25;
    const ScalarField f(g, c);
    BregmanState st(f);
    SolverParams p = SolverParams::for_time_step(0.01);
    const double res = u_update(st, f, BoundaryField(g), p);
    CHECK(res == doctest::Approx(0.0).epsilon(1e-12));
    for (double v : st.u.values) CHECK(v == doctest::Approx(c).epsilon(1e-13));
}

TEST_CASE("u_update with lambda -> 0 returns f after one sweep") {
    const GridSpec g = make_grid(0, 1, 0, 1, 8, 8);
    ScalarField f(g);
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(-2, 2);
    for (auto& v : f.values) v = dist(rng);
    BregmanState st(f);
    for (auto& v : st.u.values) v = 0.0;
    SolverParams p;
    p.h = 0.01;
    p.mu = 100.0;
    p.lambda = 1e-300;  // effectively zero; params require lambda > 0
    u_update(st, f, BoundaryField(g), p);
    for (std::size_t k = 0; k < f.values.size(); ++k)
        CHECK(st.u.values[k] == doctest::Approx(f.values[k]).epsilon(1e-12));
}

TEST_CASE("b_update accumulates gradient residuals") {
    const GridSpec g = make_grid(0, 1, 0, 1, 8, 8);
    ScalarField f(g);
    for (int i = 1; i <= 8; ++i)
        for (int j = 1; j <= 8; ++j) f.at(i, j) = g.x_of(j);  // grad = (1, 0)
    BregmanState st(f);
    const BoundaryField beta(g);

    SUBCASE("residual zero when d equals the gradient") {
        // with beta=0, d=grad u, b=0: ghosts are pure mirrors, so the wall
        // gradient differs from 1; use interior checks only
        for (auto& v : st.d_x.values) v = 1.0;
        b_update(st, beta, 1.0);
        for (int i = 2; i <= 7; ++i)
            for (int j = 2; j <= 7; ++j) {
                CHECK(st.b_x.at(i, j) == doctest::Approx(0.0).epsilon(1e-12));
                CHECK(st.b_y.at(i, j) == doctest::Approx(0.0).epsilon(1e-12));
            }
    }
    SUBCASE("direct formula and two-step accumulation") {
        for (auto& v : st.d_x.values) v = 0.5;
        b_update(st, beta, 1.0);
        for (int i = 2; i <= 7; ++i)
            for (int j = 2; j <= 7; ++j)
                CHECK(st.b_x.at(i, j) == doctest::Approx(0.5).epsilon(1e-12));
        b_update(st, beta, 1.0);
        for (int i = 2; i <= 7; ++i)
            for (int j = 2; j <= 7; ++j)
                CHECK(st.b_x.at(i, j) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("iterated u_update converges to the direct linear solve") {
    const GridSpec g = make_grid(0, 1, 0, 1, 16, 16);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-1, 1);
    ScalarField f(g);
    for (auto& v : f.values) v = dist(rng);
    BregmanState st(f);
    for (auto& v : st.d_x.values) v = 0.3 * dist(rng);
    for (auto& v : st.d_y.values) v = 0.3 * dist(rng);
    for (auto& v : st.b_x.values) v = 0.3 * dist(rng);
    for (auto& v : st.b_y.values) v = 0.3 * dist(rng);
    BoundaryField beta = BoundaryField::from_walls(g, -0.5, 0.25, 0.5, -0.25);
    SolverParams p = SolverParams::for_time_step(0.01);

    const ScalarField direct =
        oracle::direct_linear_solve(f, st.d_x, st.d_y, st.b_x, st.b_y, beta, p);
    for (int sweep = 0; sweep < 4000; ++sweep)
        if (u_update(st, f, beta, p) < 1e-15) break;
    double gap = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k)
        gap = std::max(gap, std::abs(st.u.values[k] - direct.values[k]));
    CHECK(gap <= 1e-6);
}

TEST_CASE("solve_subproblem returns the constant for constant data") {
    const GridSpec g = make_grid(0, 1, 0, 1, 12, 12);
    const ScalarField f(g, 0.75);
    SolverParams p = SolverParams::for_time_step(0.01);
    const SolveResult r = solve_subproblem(f, BoundaryField(g), p);
    CHECK(r.converged);
    for (double v : r.u.values) CHECK(v == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("solve_subproblem matches the convex minimization oracle on 16x16") {
    const GridSpec g = make_grid(-0.5, 0.5, -0.5, 0.5, 16, 16);
    const ScalarField f = disk_distance(g, 0.3);
    const double h = 0.5 * g.dx * g.dx;
    SolverParams p = SolverParams::for_time_step(h);
    p.max_iters = 20000;
    const BoundaryField beta(g);

    const ScalarField ref = oracle::convex_prox_oracle(f, beta, p.mu, 1e-8);
    const SolveResult r = solve_subproblem(f, beta, p);
    CHECK(r.converged);
    double l2 = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        const double d = r.u.values[k] - ref.values[k];
        l2 += d * d;
    }
    l2 = std::sqrt(l2 * g.dx * g.dx);
    CHECK(l2 <= 1e-3);

    // minimality spot-check: the minimizer beats f and the zero field
    const double ew = chambolle_energy(r.u, f, beta, h);
    CHECK(ew <= chambolle_energy(f, f, beta, h) + 1e-12);
    CHECK(ew <= chambolle_energy(ScalarField(g, 0.0), f, beta, h) + 1e-12);

    // max principle monitor
    double wmax = 0.0, fmax = 0.0;
    for (double v : r.u.values) wmax = std::max(wmax, std::abs(v));
    for (double v : f.values) fmax = std::max(fmax, std::abs(v));
    CHECK(wmax <= fmax + 2.0 * g.dx);
}

TEST_CASE("solve_subproblem energy is non-increasing after the first iterations") {
    const GridSpec g = make_grid(-0.5, 0.5, -0.5, 0.5, 24, 24);
    const ScalarField f = disk_distance(g, 0.3);
    const double h = 0.5 * g.dx * g.dx;
    SolverParams p = SolverParams::for_time_step(h);
    p.max_iters = 400;
    std::stringstream diag;
    solve_subproblem(f, BoundaryField(g), p, &diag);
    std::vector<double> energies;
    int it;
    double res, en;
    while (diag >> it >> res >> en) energies.push_back(en);
    REQUIRE(energies.size() >= 10);
    for (std::size_t k = 5; k + 1 < energies.size(); ++k)
        CHECK(energies[k + 1] <= energies[k] + 1e-10);
}

TEST_CASE("solve_subproblem reports non-convergence at a tiny iteration cap") {
    const GridSpec g = make_grid(-0.5, 0.5, -0.5, 0.5, 16, 16);
    const ScalarField f = disk_distance(g, 0.3);
    SolverParams p = SolverParams::for_time_step(0.5 * g.dx * g.dx);
    p.max_iters = 2;
    std::stringstream diag;
    const SolveResult r = solve_subproblem(f, BoundaryField(g), p, &diag);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 2);
    CHECK(diag.str().find("warning") != std::string::npos);
}

TEST_CASE("solver is deterministic") {
    const GridSpec g = make_grid(-0.5, 0.5, -0.5, 0.5, 20, 20);
    const ScalarField f = disk_distance(g, 0.3);
    SolverParams p = SolverParams::for_time_step(0.5 * g.dx * g.dx);
    const BoundaryField beta = BoundaryField::from_walls(g, -0.3, -0.3, 0.2, 0.0);
    const SolveResult a = solve_subproblem(f, beta, p);
    const SolveResult b = solve_subproblem(f, beta, p);
    REQUIRE(a.u.values.size() == b.u.values.size());
    for (std::size_t k = 0; k < a.u.values.size(); ++k)
        CHECK(a.u.values[k] == b.u.values[k]);
}
