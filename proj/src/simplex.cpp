#include "eroiplan/simplex.hpp"

#include <algorithm>

namespace eroiplan {

const char* to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    }
    return "?";
}

Solution solve(const LPProblem& lp, const SimplexOptions& options) {
    detail::SimplexEngine<double> engine(lp, options);
    return engine.run();
}

CheckReport check_solution(const LPProblem& lp, const Solution& solution) {
    CheckReport report;
    const auto& x = solution.values;
    for (const auto& row : lp.rows) {
        double ax = 0.0;
        for (const auto& [col, a] : row.terms)
            ax += a * x[col];
        double viol = 0.0;
        switch (row.rel) {
        case Relation::LessEq: viol = std::max(0.0, ax - row.rhs); break;
        case Relation::GreaterEq: viol = std::max(0.0, row.rhs - ax); break;
        case Relation::Equal: viol = std::abs(ax - row.rhs); break;
        }
        report.max_row_violation = std::max(report.max_row_violation, viol);
    }
    for (int j = 0; j < lp.num_vars(); ++j) {
        double viol = std::max(lp.lower[j] - x[j], x[j] - lp.upper[j]);
        report.max_bound_violation = std::max(report.max_bound_violation, std::max(0.0, viol));
    }
    const double cx = lp.objective.size() ? lp.objective.dot(x) : 0.0;
    report.objective_gap = std::abs(cx - solution.objective);
    return report;
}

double dual_objective(const LPProblem& lp, const Solution& solution) {
    const auto& y = solution.duals;
    double obj = 0.0;
    for (size_t i = 0; i < lp.rows.size(); ++i)
        obj += y[static_cast<int>(i)] * lp.rows[i].rhs;
    // Reduced costs recomputed from scratch against the original data.
    Eigen::VectorXd d = lp.objective;
    for (size_t i = 0; i < lp.rows.size(); ++i)
        for (const auto& [col, a] : lp.rows[i].terms)
            d[col] -= y[static_cast<int>(i)] * a;
    for (int j = 0; j < lp.num_vars(); ++j) {
        if (d[j] > 0.0 && std::isfinite(lp.lower[j]))
            obj += d[j] * lp.lower[j];
        else if (d[j] < 0.0 && std::isfinite(lp.upper[j]))
            obj += d[j] * lp.upper[j];
    }
    return obj;
}

} // namespace eroiplan
