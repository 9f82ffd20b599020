// Outer time stepping: signed distance -> capillary split Bregman solve ->
// threshold at zero -> repeat.
#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "capmcf/bregman.hpp"
#include "capmcf/capillary.hpp"
#include "capmcf/distance.hpp"

namespace capmcf {

enum class EvolutionStatus { Running, Extinct, Full };

struct EvolutionState {
    int step_index = 0;  // k; elapsed time is k*h exactly
    ScalarField w;       // level-set field; the +-1 sign grid (or an analytic
                         // level-set function) before the first solve, the
                         // minimizer afterwards; the current set is {w < 0}
    BoundaryField beta;  // weights used by the last solve
    EvolutionStatus status = EvolutionStatus::Running;
    int solver_iterations = 0;
    double solver_residual = 0.0;
    bool solver_converged = true;
    int threshold_ties = 0;  // nodes with |w| < 1e-12 (degenerate-tie monitor)

    double time(double h) const { return step_index * h; }
};

// Either frozen boundary weights or a contact-angle law re-evaluated from
// the current contact points at every step.
using BetaPolicy = std::variant<BoundaryField, ContactAngleSpec>;

EvolutionState make_initial_state(ScalarField w0, const BetaPolicy& policy);

// One step: f = signed distance of {w < 0}; beta per policy; w' minimizes
// the capillary Chambolle energy; the new set is {w' < 0}. Throws if the
// current set is already empty or covers the whole grid.
EvolutionState step(const EvolutionState& state, const BetaPolicy& policy,
                    const SolverParams& params);

struct RunOptions {
    double horizon = 0.0;  // evolve while k*h < horizon
    // Called after every step; return false to stop early. Never called for
    // the initial state.
    std::function<bool(const EvolutionState&)> on_step;
};

// Repeats step until the horizon, extinction, fill, or an on_step stop.
EvolutionState run(const EvolutionState& initial, const BetaPolicy& policy,
                   const SolverParams& params, const RunOptions& options);

}  // namespace capmcf
