#pragma once

#include "eroiplan/accounting.hpp"
#include "eroiplan/lp.hpp"
#include "eroiplan/model.hpp"
#include "eroiplan/simplex.hpp"

#include <optional>
#include <vector>

namespace eroiplan {

/// One snapshot optimization: no state is carried between runs.
struct ScenarioResult {
    std::optional<double> gwp_limit; // tCO2-eq/y; absent for the reference run
    SolveStatus status = SolveStatus::Optimal;
    double objective = 0.0; // solver objective (E_in,tot for the energy objective)
    std::optional<AccountingReport> report; // present when Optimal
    double solve_seconds = 0.0;
};

/// Solve one scenario end to end (assemble, solve, account).
ScenarioResult run_scenario(const ValidatedModel& model, const ObjectiveSpec& spec,
                            std::optional<double> gwp_limit,
                            const SimplexOptions& options = {});

/// Unconstrained optimum; the emissions cap row is not generated.
ScenarioResult run_reference(const ValidatedModel& model, const ObjectiveSpec& spec,
                             const SimplexOptions& options = {});

struct SweepResult {
    ScenarioResult reference;
    double baseline_gwp_op = 0.0; // reference operation emissions, the stepping base
    std::vector<ScenarioResult> targets; // ordered by descending gwp_limit
};

/// Reference run plus one independent solve per target
/// gwp_limit = (1 - k*step) * baseline for k = 1..floor(1/step). Infeasible
/// targets are kept in the list with their status. Targets may be solved
/// concurrently; ordering is by target, not completion.
SweepResult run_sweep(const ValidatedModel& model, const ObjectiveSpec& spec,
                      double step_fraction = 0.05, int threads = 0,
                      const SimplexOptions& options = {});

} // namespace eroiplan
