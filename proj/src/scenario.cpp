#include "eroiplan/scenario.hpp"

#include "eroiplan/parallel.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace eroiplan {

ScenarioResult run_scenario(const ValidatedModel& model, const ObjectiveSpec& spec,
                            std::optional<double> gwp_limit, const SimplexOptions& options) {
    ScenarioResult result;
    result.gwp_limit = gwp_limit;
    const auto start = std::chrono::steady_clock::now();
    const LPProblem lp = assemble(model, spec, gwp_limit);
    const Solution sol = solve(lp, options);
    result.status = sol.status;
    result.objective = sol.objective;
    if (sol.status == SolveStatus::Optimal)
        result.report = account(model, lp, sol);
    result.solve_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

ScenarioResult run_reference(const ValidatedModel& model, const ObjectiveSpec& spec,
                             const SimplexOptions& options) {
    return run_scenario(model, spec, std::nullopt, options);
}

SweepResult run_sweep(const ValidatedModel& model, const ObjectiveSpec& spec,
                      double step_fraction, int threads, const SimplexOptions& options) {
    if (!(step_fraction > 0.0 && step_fraction <= 1.0))
        throw std::invalid_argument("run_sweep: step fraction must lie in (0,1]");
    SweepResult sweep;
    sweep.reference = run_reference(model, spec, options);
    if (sweep.reference.status != SolveStatus::Optimal)
        throw std::runtime_error("run_sweep: reference run is " +
                                 std::string(to_string(sweep.reference.status)));
    for (const auto& [name, v] : sweep.reference.report->gwp.op_by_res)
        sweep.baseline_gwp_op += v;
    if (!(sweep.baseline_gwp_op > 0.0))
        throw std::runtime_error("run_sweep: reference operation emissions are zero; "
                                 "no baseline to step from");

    const int k_max = static_cast<int>(std::floor(1.0 / step_fraction + 1e-9));
    sweep.targets.resize(k_max);
    parallel_for(k_max, threads, [&](int i) {
        const int k = i + 1;
        const double limit = std::max(0.0, (1.0 - k * step_fraction) * sweep.baseline_gwp_op);
        sweep.targets[i] = run_scenario(model, spec, limit, options);
    });
    return sweep;
}

} // namespace eroiplan
