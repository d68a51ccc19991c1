#pragma once

#include "eroiplan/model.hpp"
#include "eroiplan/pce.hpp"
#include "eroiplan/scenario.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eroiplan {

/// Addressable model field with a uniform uncertainty range.
/// Supported paths: resource.<n>.{e_op,gwp_op,avail},
/// tech.<n>.{e_constr,gwp_constr,lifetime,f_min,f_max},
/// storage.<n>.{e_constr,gwp_constr,lifetime,f_max,eff_in,eff_out},
/// demand.<n>.annual, share.<n>.{min_fraction,max_fraction}.
struct UncertainParameter {
    enum class Kind { Relative, Absolute };
    std::string path;
    Kind kind = Kind::Relative;
    double lo = 0.0; // Relative: fractional shift (-0.25 = -25%); Absolute: value
    double hi = 0.0;
};

/// Sampled inputs in physical units plus the EROI responses.
struct DesignMatrix {
    Eigen::MatrixXd samples;    // n x d
    Eigen::VectorXd responses;  // n; NaN marks a failed (infeasible) run
    std::uint64_t seed = 0;

    int rows() const { return static_cast<int>(samples.rows()); }
    int dims() const { return static_cast<int>(samples.cols()); }
};

struct SobolReport {
    std::vector<std::string> parameter_paths;
    Eigen::VectorXd total_order;
    double mean = 0.0;
    double variance = 0.0;
    double std_dev = 0.0;
    double cov = 0.0; // std_dev / mean
    double threshold = 0.0;
    std::vector<int> critical; // indices with total_order > threshold
    double loo_error = 0.0;
    std::uint64_t seed = 0;
};

/// Physical [lo,hi] interval per parameter against the base model (relative
/// ranges resolve through the base value).
std::pair<Eigen::VectorXd, Eigen::VectorXd>
physical_ranges(const EnergySystemModel& base, const std::vector<UncertainParameter>& params);

/// Copy of the base model with each parameter set to its physical value.
EnergySystemModel apply_parameters(const EnergySystemModel& base,
                                   const std::vector<UncertainParameter>& params,
                                   const Eigen::VectorXd& values);

/// Checks that every path resolves, lo <= hi, and both interval endpoints
/// keep the model valid. Throws ValidationError listing all problems.
void check_parameters(const EnergySystemModel& base,
                      const std::vector<UncertainParameter>& params);

/// Reproducible Latin-hypercube design in physical units (no responses yet).
DesignMatrix sample(const EnergySystemModel& base,
                    const std::vector<UncertainParameter>& params, int n, std::uint64_t seed);

struct EvaluateOptions {
    int threads = 0;
    double max_failed_fraction = 0.05; // abort above this share of failed rows
    SimplexOptions simplex;
};

/// EROI per design row via assemble -> solve -> accounting on a fresh model
/// copy. Rows are independent and evaluated concurrently; failed rows are
/// tagged NaN, and the run aborts when more than max_failed_fraction fail.
void evaluate_batch(const EnergySystemModel& base,
                    const std::vector<UncertainParameter>& params, DesignMatrix& design,
                    const ObjectiveSpec& spec, std::optional<double> gwp_limit,
                    const EvaluateOptions& options = {});

struct GsaOptions {
    int runs = 5;                 // first-order repetitions
    std::uint64_t seed = 1;
    int samples = 0;              // 0 = max(2 * basis size, 50) per fit
    EvaluateOptions evaluate;
};

struct ScreeningRun {
    Eigen::VectorXd total_order;
    double loo_error = 0.0;
};

struct ScreeningResult {
    std::vector<std::string> parameter_paths;
    std::vector<ScreeningRun> runs;
    Eigen::VectorXd max_total_order; // per parameter over the runs
    double threshold = 0.0;          // 1 / d
    std::vector<int> shortlist;      // parameters with max index above threshold
};

/// First-order screening: order-1 fits on `runs` independent designs; a
/// parameter survives when its total-order index clears 1/d in at least one
/// run.
ScreeningResult screen_first_order(const EnergySystemModel& base,
                                   const std::vector<UncertainParameter>& params,
                                   const ObjectiveSpec& spec, std::optional<double> gwp_limit,
                                   const GsaOptions& options = {});

struct SecondOrderResult {
    SobolReport report;
    pce::Surrogate<double> surrogate;
    DesignMatrix design;
};

/// Order-2 fit on the shortlist; the critical set reuses the 1/d rule with
/// d = shortlist size. Moments and CoV come from the coefficients.
SecondOrderResult analyze_second_order(const EnergySystemModel& base,
                                       const std::vector<UncertainParameter>& shortlist,
                                       const ObjectiveSpec& spec,
                                       std::optional<double> gwp_limit,
                                       const GsaOptions& options = {});

/// Rows with NaN responses dropped (used before fitting).
DesignMatrix drop_failed_rows(const DesignMatrix& design);

} // namespace eroiplan
