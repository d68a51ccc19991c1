#pragma once

#include "eroiplan/model.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace eroiplan {

/// Column kinds of the planning LP. Capacity-style variables carry td = h = -1.
enum class VarKind {
    ResourceUse,      // F_t(resource, td, h): use rate [GWh/h]
    Capacity,         // F(tech) [GW] (or service units/h)
    Activity,         // main-output production rate of a technology [GWh/h]
    StorageCapacity,  // F(storage) [GWh]
    StorageCharge,    // charge rate [GWh/h]
    StorageDischarge, // discharge rate [GWh/h]
    StorageLevel,     // state of charge [GWh]
};

const char* to_string(VarKind kind);

struct VarKey {
    VarKind kind;
    std::string entity;
    int td = -1;
    int h = -1;

    auto operator<=>(const VarKey&) const = default;
};

enum class Relation { LessEq, Equal, GreaterEq };

struct LPRow {
    std::vector<std::pair<int, double>> terms; // (column, coefficient)
    Relation rel = Relation::Equal;
    double rhs = 0.0;
    std::string name;
};

/// Deterministic column table: resources, then technologies, then storages,
/// each block sorted lexicographically by name, then by (td, h).
class VarTable {
public:
    int size() const { return static_cast<int>(columns_.size()); }
    const VarKey& key(int col) const { return columns_[col]; }
    const std::vector<VarKey>& columns() const { return columns_; }

    /// Column index; throws std::out_of_range for unknown keys.
    int column(VarKind kind, const std::string& entity, int td = -1, int h = -1) const;
    /// Column index or -1 when the key does not exist.
    int find(VarKind kind, const std::string& entity, int td = -1, int h = -1) const;

    void push(VarKey key);

private:
    std::vector<VarKey> columns_;
    std::map<VarKey, int> index_;
};

struct LPProblem {
    Eigen::VectorXd objective;
    std::vector<LPRow> rows;
    Eigen::VectorXd lower, upper;
    VarTable vars;

    int num_vars() const { return vars.size(); }
};

struct CustomTerm {
    enum class Scope { Capacity, Use };
    Scope scope = Scope::Capacity;
    std::string entity;
    double coeff = 0.0;
};

struct ObjectiveSpec {
    enum class Kind { EnergyInvested, CustomLinear };
    Kind kind = Kind::EnergyInvested;
    std::vector<CustomTerm> terms; // CustomLinear only

    static ObjectiveSpec energy_invested() { return {}; }
    static ObjectiveSpec custom(std::vector<CustomTerm> terms);
};

/// Builds the column table with default bounds: capacities within
/// [f_min, f_max] (storage [0, f_max]), everything else [0, inf).
VarTable build_var_table(const ValidatedModel& model);

/// Annualized energy-invested objective: capacity columns carry
/// e_constr/lifetime, resource-use columns e_op * weight(td) * t_op.
/// CustomLinear passes the user coefficients through (Use terms receive the
/// same weight(td) * t_op annualization factor).
Eigen::VectorXd build_objective(const ValidatedModel& model, const ObjectiveSpec& spec,
                                const VarTable& vars);

/// Single emissions-cap row (construction terms amortized over lifetime plus
/// annualized operation terms); empty when gwp_limit is absent. gwp_limit in
/// tCO2-eq/y.
std::vector<LPRow> build_gwp_rows(const ValidatedModel& model,
                                  std::optional<double> gwp_limit, const VarTable& vars);

/// Per-carrier, per-(td,h) balance equalities: technology conversions,
/// resource inflow and storage charge/discharge against exogenous demand.
std::vector<LPRow> build_balance_rows(const ValidatedModel& model, const VarTable& vars);

/// Activity <= cpt * F rows (a zero cpt becomes a zero upper bound on the
/// activity column), resource availability caps, storage level recursion and
/// level <= capacity rows, and annual share-bound rows. Also tightens bounds
/// in `lp`.
void build_capacity_rows(const ValidatedModel& model, LPProblem& lp);

/// Full problem: deterministic column ordering, balance rows, capacity and
/// availability rows, share rows, then the optional emissions cap.
LPProblem assemble(const ValidatedModel& model, const ObjectiveSpec& spec,
                   std::optional<double> gwp_limit);

/// Writes the problem in CPLEX-style LP text (Minimize / Subject To / Bounds)
/// for cross-checking with external solvers.
void write_lp_text(const LPProblem& lp, std::ostream& os);

/// Column name used in the LP text export (deterministic, sanitized).
std::string lp_column_name(const VarKey& key);

} // namespace eroiplan
