#pragma once

#include <Eigen/Core>

#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eroiplan {

/// Sentinel for "no upper limit" on availabilities and capacities.
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Every typical day has a fixed 24-hour grid.
inline constexpr int kHoursPerDay = 24;

/// Quantity defined on the (typical day, hour) grid: one row per typical
/// day, one column per hour. An empty matrix means "use the type's default"
/// (all-ones for capacity factors, flat for demand profiles) and is filled
/// in during validation.
using TdSeries = Eigen::MatrixXd;

struct TypicalDay {
    std::string id;
    double weight_days = 0.0; // number of real days this typical day stands for

    bool operator==(const TypicalDay&) const = default;
};

/// Maps the 8760-hour year onto a small set of weighted typical days.
struct TimeMapping {
    std::vector<TypicalDay> typical_days;
    double t_op_hours = 1.0; // duration of one period on the hour grid

    int day_count() const { return static_cast<int>(typical_days.size()); }

    /// Σ_td weight(td) · 24 · t_op — must equal 8760 for a valid mapping.
    double hours_per_year() const;

    bool operator==(const TimeMapping&) const = default;
};

/// Primary energy carrier that can be drawn from outside the system.
/// A resource injects into the carrier bearing its own name.
struct Resource {
    std::string name;
    double e_op = 0.0;        // energy invested per unit used [GWh/GWh_fuel]
    double gwp_op = 0.0;      // operation emissions [tCO2-eq/GWh_fuel]
    double avail = kUnbounded; // annual availability [GWh/y]

    bool operator==(const Resource&) const = default;
};

/// Conversion technology. `conversion` maps carrier -> coefficient with the
/// main output normalized to +1 and inputs negative.
struct Technology {
    std::string name;
    double e_constr = 0.0;   // energy invested in construction [GWh/GW]
    double gwp_constr = 0.0; // construction emissions [tCO2-eq/GW]
    double lifetime = 25.0;  // [years]
    double f_min = 0.0;      // capacity bounds [GW]
    double f_max = kUnbounded;
    std::map<std::string, double> conversion;
    TdSeries cpt; // hourly capacity factor in [0,1]; empty = 1 everywhere

    /// Carrier whose conversion coefficient is +1.
    std::string main_output() const;

    bool operator==(const Technology& o) const;
};

/// Intra-day storage: cyclic state of charge within each typical day.
struct StorageUnit {
    std::string name;
    std::string carrier;
    double eff_in = 1.0;  // charge efficiency in (0,1]
    double eff_out = 1.0; // discharge efficiency in (0,1]
    double e_constr = 0.0;   // [GWh invested per GWh capacity]
    double gwp_constr = 0.0; // [tCO2-eq per GWh capacity]
    double lifetime = 25.0;
    double f_max = kUnbounded; // energy capacity [GWh]

    bool operator==(const StorageUnit&) const = default;
};

/// Exogenous end-use demand on one carrier. `profile` holds the share of the
/// annual demand falling in each (td, h); Σ weight(td)·profile(td,h) = 1.
struct EndUseDemand {
    std::string name;
    std::string carrier;
    double annual = 0.0; // [GWh/y] (or generic service units per year)
    TdSeries profile;    // empty = flat

    bool operator==(const EndUseDemand& o) const;
};

/// Bounds the share a group of technologies contributes to the total annual
/// production of a carrier (e.g. public-transport share of passenger
/// mobility).
struct ShareConstraint {
    std::string name;
    std::string carrier;
    std::vector<std::string> members; // technology names
    std::optional<double> min_fraction;
    std::optional<double> max_fraction;

    bool operator==(const ShareConstraint&) const = default;
};

struct EnergySystemModel {
    TimeMapping time_mapping;
    std::vector<Resource> resources;
    std::vector<Technology> technologies;
    std::vector<StorageUnit> storages;
    std::vector<EndUseDemand> demands;
    std::vector<ShareConstraint> shares;
    /// Resource name -> mix category tag (fossil, non-RE, RE-fuels, biomass,
    /// wind, solar, other). Missing entries default to "other".
    std::map<std::string, std::string> resource_category;

    bool operator==(const EnergySystemModel& o) const;
};

struct ValidationIssue {
    std::string path;    // e.g. "tech.ccgt.f_max"
    std::string message;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues);
    const std::vector<ValidationIssue>& issues() const { return issues_; }

private:
    std::vector<ValidationIssue> issues_;
};

/// Sealed, immutable view of a model that passed validation. Safe to share
/// between threads; all mutation happens on the raw EnergySystemModel before
/// validation.
class ValidatedModel {
public:
    const EnergySystemModel& raw() const { return model_; }
    const TimeMapping& time_mapping() const { return model_.time_mapping; }

    /// Sorted union of every carrier mentioned anywhere in the model.
    const std::vector<std::string>& carriers() const { return carriers_; }

    const Resource* find_resource(const std::string& name) const;
    const Technology* find_technology(const std::string& name) const;
    const StorageUnit* find_storage(const std::string& name) const;

    std::string category_of(const std::string& resource) const;

private:
    friend ValidatedModel validate(EnergySystemModel model);
    EnergySystemModel model_;
    std::vector<std::string> carriers_;
    std::map<std::string, int> resource_index_, tech_index_, storage_index_;
};

/// Checks every type invariant, fills in default series (all-ones cpt, flat
/// demand profiles) and returns the sealed model. Throws ValidationError
/// listing every violation with a field path. Validating an already-sealed
/// model returns it unchanged.
ValidatedModel validate(EnergySystemModel model);

/// Annual total of a per-period quantity: Σ_(td,h) weight(td)·q(td,h)·t_op.
/// Equals the plain sum over all 8760 hours under the mapping. The series
/// must cover the full (td, h) grid.
double annualize(const TdSeries& q_per_period, const TimeMapping& mapping);

/// Per-period demand series such that annualize(series) == demand.annual.
TdSeries demand_series(const EndUseDemand& demand, const TimeMapping& mapping);

} // namespace eroiplan
