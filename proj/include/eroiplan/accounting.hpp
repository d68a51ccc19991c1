#pragma once

#include "eroiplan/lp.hpp"
#include "eroiplan/model.hpp"
#include "eroiplan/simplex.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace eroiplan {

class DegenerateSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EnergyInvestedBreakdown {
    std::map<std::string, double> constr_by_tech; // annualized, storages included [GWh/y]
    std::map<std::string, double> op_by_res;      // [GWh/y]
    double total = 0.0;
};

struct GwpBreakdown {
    std::map<std::string, double> constr_by_tech; // annualized [tCO2-eq/y]
    std::map<std::string, double> op_by_res;      // [tCO2-eq/y]
    double total = 0.0;
};

struct FecBreakdown {
    std::map<std::string, double> by_eud; // keyed by demand name [GWh/y]
    double total = 0.0;
};

struct MixEntry {
    double annual_gwh = 0.0;
    double share = 0.0;
    std::string category;
};

using PrimaryMix = std::map<std::string, MixEntry>;

struct AccountingReport {
    EnergyInvestedBreakdown e_in;
    GwpBreakdown gwp;
    FecBreakdown fec;
    PrimaryMix primary_mix;
    double eroi = 0.0;
};

/// Per-(td,h) values of one variable family from a solution.
TdSeries var_series(const LPProblem& lp, const Solution& solution, VarKind kind,
                    const std::string& entity, const TimeMapping& mapping);

/// Annualized use of a resource [GWh/y].
double annual_resource_use(const ValidatedModel& model, const LPProblem& lp,
                           const Solution& solution, const std::string& resource);

/// Annualized main-output activity of a technology.
double annual_activity(const ValidatedModel& model, const LPProblem& lp,
                       const Solution& solution, const std::string& tech);

/// Construction terms amortized over lifetime plus annualized operation
/// terms. For the energy-invested objective the total equals the solver
/// objective.
EnergyInvestedBreakdown compute_einv(const ValidatedModel& model, const LPProblem& lp,
                                     const Solution& solution);

/// Emissions mirror of compute_einv.
GwpBreakdown compute_gwp(const ValidatedModel& model, const LPProblem& lp,
                         const Solution& solution);

struct FecProducer {
    std::string name;
    double production = 0.0;    // of the end-use carrier
    double corrected = 0.0;     // production after the pro-rata consumption correction
    double other_outputs = 0.0; // co-products, in their conversion units
    double inputs = 0.0;        // everything the producer consumes
    double fec = 0.0;           // allocated contribution
    bool resource_style = false;
};

struct CarrierFec {
    double consumed = 0.0; // by technologies and storage charging
    double total = 0.0;
    std::vector<FecProducer> producers;
};

/// Allocation detail for one end-use carrier (see compute_fec).
CarrierFec fec_of_carrier(const ValidatedModel& model, const LPProblem& lp,
                          const Solution& solution, const std::string& carrier);

/// Final energy consumption per end-use demand: producer inputs allocated by
/// output share, with direct resource supply passing through unchanged. When
/// technologies (or storage charging) consume an end-use carrier, producers
/// are first shrunk pro-rata so the corrected productions sum to the demand.
FecBreakdown compute_fec(const ValidatedModel& model, const LPProblem& lp,
                         const Solution& solution);

/// fec_total / e_in_tot. Throws DegenerateSystem when nothing was invested.
double compute_eroi(const AccountingReport& report);

/// Annualized primary supply per resource with category tags; zero-use
/// resources are dropped and shares sum to one.
PrimaryMix primary_mix(const ValidatedModel& model, const LPProblem& lp,
                       const Solution& solution);

/// Full ex-post report for an optimal solution.
AccountingReport account(const ValidatedModel& model, const LPProblem& lp,
                         const Solution& solution);

} // namespace eroiplan
