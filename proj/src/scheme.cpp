#include "capmcf/scheme.hpp"

#include <cmath>
#include <stdexcept>

namespace capmcf {

namespace {

EvolutionStatus classify(const ScalarField& w, int& ties) {
    bool any_neg = false, any_nonneg = false;
    ties = 0;
    for (double v : w.values) {
        if (v < 0.0) any_neg = true;
        else any_nonneg = true;
        if (std::abs(v) < 1e-12) ++ties;
    }
    if (!any_neg) return EvolutionStatus::Extinct;
    if (!any_nonneg) return EvolutionStatus::Full;
    return EvolutionStatus::Running;
}

BoundaryField beta_for(const EvolutionState& state, const BetaPolicy& policy) {
    if (const BoundaryField* fixed = std::get_if<BoundaryField>(&policy))
        return *fixed;
    const ContactAngleSpec& spec = std::get<ContactAngleSpec>(policy);
    const BoundaryArcs arcs = detect_contact_arcs(state.w, spec.rho);
    return build_beta(spec, arcs, /*t=*/0.0, state.w.grid).beta;
}

}  // namespace

EvolutionState make_initial_state(ScalarField w0, const BetaPolicy& policy) {
    EvolutionState state;
    state.w = std::move(w0);
    state.status = classify(state.w, state.threshold_ties);
    state.beta = beta_for(state, policy);
    return state;
}

EvolutionState step(const EvolutionState& state, const BetaPolicy& policy,
                    const SolverParams& params) {
    if (state.status == EvolutionStatus::Extinct)
        throw std::runtime_error("step: current set is empty");
    if (state.status == EvolutionStatus::Full)
        throw std::runtime_error("step: current set covers the whole grid");

    const SignedDistanceField f = signed_distance(state.w);

    EvolutionState next;
    next.step_index = state.step_index + 1;
    if (const ContactAngleSpec* spec = std::get_if<ContactAngleSpec>(&policy)) {
        const BoundaryArcs arcs = detect_contact_arcs(state.w, spec->rho);
        next.beta =
            build_beta(*spec, arcs, state.time(params.h), state.w.grid).beta;
    } else {
        next.beta = std::get<BoundaryField>(policy);
    }

    const SolveResult sol = solve_subproblem(f.d, next.beta, params);
    next.w = sol.u;
    next.solver_iterations = sol.iterations;
    next.solver_residual = sol.residual;
    next.solver_converged = sol.converged;
    next.status = classify(next.w, next.threshold_ties);
    return next;
}

EvolutionState run(const EvolutionState& initial, const BetaPolicy& policy,
                   const SolverParams& params, const RunOptions& options) {
    EvolutionState state = initial;
    while (state.status == EvolutionStatus::Running &&
           state.time(params.h) < options.horizon) {
        state = step(state, policy, params);
        if (options.on_step && !options.on_step(state)) break;
    }
    return state;
}

}  // namespace capmcf
