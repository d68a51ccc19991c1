#include "eroiplan/gsa.hpp"

#include "eroiplan/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace eroiplan {

namespace {

// Parses "<type>.<entity>.<field>" where the entity may itself contain dots.
struct ParsedPath {
    std::string type, entity, field;
};

ParsedPath parse_path(const std::string& path) {
    const auto first = path.find('.');
    const auto last = path.rfind('.');
    if (first == std::string::npos || last == first)
        throw std::invalid_argument("uncertain parameter path '" + path +
                                    "' is not <type>.<entity>.<field>");
    return {path.substr(0, first), path.substr(first + 1, last - first - 1),
            path.substr(last + 1)};
}

double* resolve(EnergySystemModel& m, const std::string& path) {
    const ParsedPath p = parse_path(path);
    if (p.type == "resource") {
        for (auto& r : m.resources)
            if (r.name == p.entity) {
                if (p.field == "e_op") return &r.e_op;
                if (p.field == "gwp_op") return &r.gwp_op;
                if (p.field == "avail") return &r.avail;
                break;
            }
    } else if (p.type == "tech") {
        for (auto& t : m.technologies)
            if (t.name == p.entity) {
                if (p.field == "e_constr") return &t.e_constr;
                if (p.field == "gwp_constr") return &t.gwp_constr;
                if (p.field == "lifetime") return &t.lifetime;
                if (p.field == "f_min") return &t.f_min;
                if (p.field == "f_max") return &t.f_max;
                break;
            }
    } else if (p.type == "storage") {
        for (auto& s : m.storages)
            if (s.name == p.entity) {
                if (p.field == "e_constr") return &s.e_constr;
                if (p.field == "gwp_constr") return &s.gwp_constr;
                if (p.field == "lifetime") return &s.lifetime;
                if (p.field == "f_max") return &s.f_max;
                if (p.field == "eff_in") return &s.eff_in;
                if (p.field == "eff_out") return &s.eff_out;
                break;
            }
    } else if (p.type == "demand") {
        for (auto& d : m.demands)
            if (d.name == p.entity) {
                if (p.field == "annual") return &d.annual;
                break;
            }
    } else if (p.type == "share") {
        for (auto& sc : m.shares)
            if (sc.name == p.entity) {
                if (p.field == "min_fraction" && sc.min_fraction) return &*sc.min_fraction;
                if (p.field == "max_fraction" && sc.max_fraction) return &*sc.max_fraction;
                break;
            }
    }
    return nullptr;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int default_samples(int d, int order, int override_n) {
    if (override_n > 0)
        return override_n;
    const long b = pce::basis_size(d, order);
    return static_cast<int>(std::max(2 * b, 50L));
}

// "Above the threshold" with a hair of slack so the degenerate single-
// parameter case (index exactly 1, threshold exactly 1) still qualifies.
bool above_threshold(double value, double threshold) {
    return value > threshold * (1.0 - 1e-9);
}

} // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd>
physical_ranges(const EnergySystemModel& base, const std::vector<UncertainParameter>& params) {
    const int d = static_cast<int>(params.size());
    Eigen::VectorXd lo(d), hi(d);
    EnergySystemModel probe = base;
    for (int j = 0; j < d; ++j) {
        const auto& p = params[j];
        if (p.kind == UncertainParameter::Kind::Absolute) {
            lo[j] = p.lo;
            hi[j] = p.hi;
        } else {
            double* field = resolve(probe, p.path);
            if (!field)
                throw std::invalid_argument("unknown uncertain parameter path '" + p.path + "'");
            lo[j] = *field * (1.0 + p.lo);
            hi[j] = *field * (1.0 + p.hi);
            if (lo[j] > hi[j])
                std::swap(lo[j], hi[j]); // negative base value flips the interval
        }
    }
    return {lo, hi};
}

EnergySystemModel apply_parameters(const EnergySystemModel& base,
                                   const std::vector<UncertainParameter>& params,
                                   const Eigen::VectorXd& values) {
    EnergySystemModel m = base;
    for (size_t j = 0; j < params.size(); ++j) {
        double* field = resolve(m, params[j].path);
        if (!field)
            throw std::invalid_argument("unknown uncertain parameter path '" + params[j].path +
                                        "'");
        *field = values[static_cast<int>(j)];
    }
    return m;
}

void check_parameters(const EnergySystemModel& base,
                      const std::vector<UncertainParameter>& params) {
    std::vector<ValidationIssue> issues;
    EnergySystemModel probe = base;
    for (const auto& p : params) {
        try {
            if (!resolve(probe, p.path)) {
                issues.push_back({p.path, "path does not resolve to a model field"});
                continue;
            }
        } catch (const std::invalid_argument& e) {
            issues.push_back({p.path, e.what()});
            continue;
        }
        if (!(p.lo <= p.hi))
            issues.push_back({p.path, "range must satisfy lo <= hi"});
    }
    if (!issues.empty())
        throw ValidationError(std::move(issues));

    // Both interval ends must keep the model valid.
    auto [lo, hi] = physical_ranges(base, params);
    for (const auto* end : {&lo, &hi}) {
        try {
            validate(apply_parameters(base, params, *end));
        } catch (const ValidationError& e) {
            std::vector<ValidationIssue> all{{"uncertain",
                                              "applying a range endpoint breaks the model"}};
            all.insert(all.end(), e.issues().begin(), e.issues().end());
            throw ValidationError(std::move(all));
        }
    }
}

DesignMatrix sample(const EnergySystemModel& base,
                    const std::vector<UncertainParameter>& params, int n, std::uint64_t seed) {
    if (n <= 0)
        throw std::invalid_argument("sample: need n > 0");
    const int d = static_cast<int>(params.size());
    auto [lo, hi] = physical_ranges(base, params);
    Rng rng(seed);
    Eigen::MatrixXd u = latin_hypercube(n, d, rng);
    DesignMatrix design;
    design.seed = seed;
    design.samples.resize(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            design.samples(i, j) = lo[j] + (hi[j] - lo[j]) * u(i, j);
    design.responses = Eigen::VectorXd::Constant(n, std::nan(""));
    return design;
}

void evaluate_batch(const EnergySystemModel& base,
                    const std::vector<UncertainParameter>& params, DesignMatrix& design,
                    const ObjectiveSpec& spec, std::optional<double> gwp_limit,
                    const EvaluateOptions& options) {
    const int n = design.rows();
    design.responses = Eigen::VectorXd::Constant(n, std::nan(""));
    parallel_for(n, options.threads, [&](int i) {
        EnergySystemModel m = apply_parameters(base, params, design.samples.row(i).transpose());
        const ValidatedModel vm = validate(std::move(m));
        const LPProblem lp = assemble(vm, spec, gwp_limit);
        const Solution sol = solve(lp, options.simplex);
        if (sol.status == SolveStatus::Optimal) {
            const AccountingReport report = account(vm, lp, sol);
            design.responses[i] = report.eroi;
        }
    });
    int failed = 0;
    for (int i = 0; i < n; ++i)
        if (std::isnan(design.responses[i]))
            ++failed;
    if (failed > options.max_failed_fraction * n)
        throw std::runtime_error("evaluate_batch: " + std::to_string(failed) + "/" +
                                 std::to_string(n) + " runs failed (limit " +
                                 std::to_string(options.max_failed_fraction * 100) + "%)");
}

DesignMatrix drop_failed_rows(const DesignMatrix& design) {
    std::vector<int> keep;
    for (int i = 0; i < design.rows(); ++i)
        if (!std::isnan(design.responses[i]))
            keep.push_back(i);
    DesignMatrix out;
    out.seed = design.seed;
    out.samples.resize(keep.size(), design.dims());
    out.responses.resize(keep.size());
    for (size_t k = 0; k < keep.size(); ++k) {
        out.samples.row(static_cast<int>(k)) = design.samples.row(keep[k]);
        out.responses[static_cast<int>(k)] = design.responses[keep[k]];
    }
    return out;
}

namespace {

pce::Surrogate<double> fit_design(const EnergySystemModel& base,
                                  const std::vector<UncertainParameter>& params,
                                  const DesignMatrix& design, int order) {
    auto [lo, hi] = physical_ranges(base, params);
    const DesignMatrix clean = drop_failed_rows(design);
    return pce::fit_pce<double>(clean.samples, clean.responses, order, lo, hi);
}

} // namespace

ScreeningResult screen_first_order(const EnergySystemModel& base,
                                   const std::vector<UncertainParameter>& params,
                                   const ObjectiveSpec& spec, std::optional<double> gwp_limit,
                                   const GsaOptions& options) {
    check_parameters(base, params);
    const int d = static_cast<int>(params.size());
    if (d == 0)
        throw std::invalid_argument("screen_first_order: empty parameter list");
    const int n = default_samples(d, 1, options.samples);

    ScreeningResult result;
    for (const auto& p : params)
        result.parameter_paths.push_back(p.path);
    result.threshold = 1.0 / d;
    result.max_total_order = Eigen::VectorXd::Zero(d);

    for (int run = 0; run < options.runs; ++run) {
        DesignMatrix design = sample(base, params, n, mix_seed(options.seed, run));
        evaluate_batch(base, params, design, spec, gwp_limit, options.evaluate);
        const auto surrogate = fit_design(base, params, design, 1);
        ScreeningRun sr;
        sr.loo_error = surrogate.loo_error;
        sr.total_order = pce::sobol_total(surrogate);
        result.max_total_order = result.max_total_order.cwiseMax(sr.total_order);
        result.runs.push_back(std::move(sr));
    }
    for (int j = 0; j < d; ++j)
        if (above_threshold(result.max_total_order[j], result.threshold))
            result.shortlist.push_back(j);
    return result;
}

SecondOrderResult analyze_second_order(const EnergySystemModel& base,
                                       const std::vector<UncertainParameter>& shortlist,
                                       const ObjectiveSpec& spec,
                                       std::optional<double> gwp_limit,
                                       const GsaOptions& options) {
    check_parameters(base, shortlist);
    const int d = static_cast<int>(shortlist.size());
    if (d == 0)
        throw std::invalid_argument("analyze_second_order: empty shortlist");
    const int n = default_samples(d, 2, options.samples);

    SecondOrderResult result;
    result.design = sample(base, shortlist, n, mix_seed(options.seed, 0x5eed));
    evaluate_batch(base, shortlist, result.design, spec, gwp_limit, options.evaluate);
    result.surrogate = fit_design(base, shortlist, result.design, 2);

    SobolReport& report = result.report;
    for (const auto& p : shortlist)
        report.parameter_paths.push_back(p.path);
    report.seed = options.seed;
    report.loo_error = result.surrogate.loo_error;
    report.total_order = pce::sobol_total(result.surrogate);
    const pce::Moments m = pce::moments(result.surrogate);
    report.mean = m.mean;
    report.variance = m.variance;
    report.std_dev = std::sqrt(m.variance);
    report.cov = report.mean != 0.0 ? report.std_dev / report.mean : 0.0;
    report.threshold = 1.0 / d;
    for (int j = 0; j < d; ++j)
        if (above_threshold(report.total_order[j], report.threshold))
            report.critical.push_back(j);
    return result;
}

} // namespace eroiplan
