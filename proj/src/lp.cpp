#include "eroiplan/lp.hpp"

#include "eroiplan/format.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace eroiplan {

namespace {

std::vector<const Resource*> sorted_resources(const EnergySystemModel& m) {
    std::vector<const Resource*> v;
    for (const auto& r : m.resources)
        v.push_back(&r);
    std::sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->name < b->name; });
    return v;
}

std::vector<const Technology*> sorted_technologies(const EnergySystemModel& m) {
    std::vector<const Technology*> v;
    for (const auto& t : m.technologies)
        v.push_back(&t);
    std::sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->name < b->name; });
    return v;
}

std::vector<const StorageUnit*> sorted_storages(const EnergySystemModel& m) {
    std::vector<const StorageUnit*> v;
    for (const auto& s : m.storages)
        v.push_back(&s);
    std::sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->name < b->name; });
    return v;
}

void push_term(LPRow& row, int col, double coeff) {
    if (coeff != 0.0)
        row.terms.emplace_back(col, coeff);
}

} // namespace

const char* to_string(VarKind kind) {
    switch (kind) {
    case VarKind::ResourceUse: return "resource_use";
    case VarKind::Capacity: return "capacity";
    case VarKind::Activity: return "activity";
    case VarKind::StorageCapacity: return "storage_capacity";
    case VarKind::StorageCharge: return "storage_charge";
    case VarKind::StorageDischarge: return "storage_discharge";
    case VarKind::StorageLevel: return "storage_level";
    }
    return "?";
}

int VarTable::column(VarKind kind, const std::string& entity, int td, int h) const {
    int col = find(kind, entity, td, h);
    if (col < 0)
        throw std::out_of_range("no LP column for " + std::string(to_string(kind)) + "/" +
                                entity + "[" + std::to_string(td) + "," + std::to_string(h) + "]");
    return col;
}

int VarTable::find(VarKind kind, const std::string& entity, int td, int h) const {
    auto it = index_.find(VarKey{kind, entity, td, h});
    return it == index_.end() ? -1 : it->second;
}

void VarTable::push(VarKey key) {
    index_.emplace(key, static_cast<int>(columns_.size()));
    columns_.push_back(std::move(key));
}

ObjectiveSpec ObjectiveSpec::custom(std::vector<CustomTerm> terms) {
    ObjectiveSpec s;
    s.kind = Kind::CustomLinear;
    s.terms = std::move(terms);
    return s;
}

VarTable build_var_table(const ValidatedModel& model) {
    const auto& m = model.raw();
    const int n_td = m.time_mapping.day_count();
    VarTable table;
    for (const auto* r : sorted_resources(m))
        for (int td = 0; td < n_td; ++td)
            for (int h = 0; h < kHoursPerDay; ++h)
                table.push({VarKind::ResourceUse, r->name, td, h});
    for (const auto* t : sorted_technologies(m)) {
        table.push({VarKind::Capacity, t->name, -1, -1});
        for (int td = 0; td < n_td; ++td)
            for (int h = 0; h < kHoursPerDay; ++h)
                table.push({VarKind::Activity, t->name, td, h});
    }
    for (const auto* s : sorted_storages(m)) {
        table.push({VarKind::StorageCapacity, s->name, -1, -1});
        for (VarKind kind : {VarKind::StorageCharge, VarKind::StorageDischarge,
                             VarKind::StorageLevel})
            for (int td = 0; td < n_td; ++td)
                for (int h = 0; h < kHoursPerDay; ++h)
                    table.push({kind, s->name, td, h});
    }
    return table;
}

Eigen::VectorXd build_objective(const ValidatedModel& model, const ObjectiveSpec& spec,
                                const VarTable& vars) {
    const auto& m = model.raw();
    const auto& tm = m.time_mapping;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(vars.size());

    if (spec.kind == ObjectiveSpec::Kind::EnergyInvested) {
        for (const auto& t : m.technologies)
            c[vars.column(VarKind::Capacity, t.name)] = t.e_constr / t.lifetime;
        for (const auto& s : m.storages)
            c[vars.column(VarKind::StorageCapacity, s.name)] = s.e_constr / s.lifetime;
        for (const auto& r : m.resources)
            for (int td = 0; td < tm.day_count(); ++td)
                for (int h = 0; h < kHoursPerDay; ++h)
                    c[vars.column(VarKind::ResourceUse, r.name, td, h)] =
                        r.e_op * tm.typical_days[td].weight_days * tm.t_op_hours;
        return c;
    }

    for (const auto& term : spec.terms) {
        if (term.scope == CustomTerm::Scope::Capacity) {
            int col = vars.find(VarKind::Capacity, term.entity);
            if (col < 0)
                col = vars.find(VarKind::StorageCapacity, term.entity);
            if (col < 0)
                throw std::invalid_argument("custom objective references unknown capacity '" +
                                            term.entity + "'");
            c[col] += term.coeff;
        } else {
            if (!model.find_resource(term.entity))
                throw std::invalid_argument("custom objective references unknown resource '" +
                                            term.entity + "'");
            for (int td = 0; td < tm.day_count(); ++td)
                for (int h = 0; h < kHoursPerDay; ++h)
                    c[vars.column(VarKind::ResourceUse, term.entity, td, h)] +=
                        term.coeff * tm.typical_days[td].weight_days * tm.t_op_hours;
        }
    }
    return c;
}

std::vector<LPRow> build_gwp_rows(const ValidatedModel& model,
                                  std::optional<double> gwp_limit, const VarTable& vars) {
    if (!gwp_limit)
        return {};
    if (*gwp_limit < 0.0)
        throw std::invalid_argument("gwp_limit must be nonnegative");
    const auto& m = model.raw();
    const auto& tm = m.time_mapping;
    LPRow row;
    row.rel = Relation::LessEq;
    row.rhs = *gwp_limit;
    row.name = "gwp_cap";
    for (const auto& t : m.technologies)
        push_term(row, vars.column(VarKind::Capacity, t.name), t.gwp_constr / t.lifetime);
    for (const auto& s : m.storages)
        push_term(row, vars.column(VarKind::StorageCapacity, s.name), s.gwp_constr / s.lifetime);
    for (const auto& r : m.resources)
        if (r.gwp_op != 0.0)
            for (int td = 0; td < tm.day_count(); ++td)
                for (int h = 0; h < kHoursPerDay; ++h)
                    push_term(row, vars.column(VarKind::ResourceUse, r.name, td, h),
                              r.gwp_op * tm.typical_days[td].weight_days * tm.t_op_hours);
    return {std::move(row)};
}

std::vector<LPRow> build_balance_rows(const ValidatedModel& model, const VarTable& vars) {
    const auto& m = model.raw();
    const auto& tm = m.time_mapping;
    const int n_td = tm.day_count();
    std::vector<LPRow> rows;
    rows.reserve(model.carriers().size() * n_td * kHoursPerDay);

    // Demand rate per carrier on the (td, h) grid.
    std::map<std::string, TdSeries> demand_rate;
    for (const auto& d : m.demands) {
        TdSeries q = demand_series(d, tm);
        auto [it, inserted] = demand_rate.emplace(d.carrier, q);
        if (!inserted)
            it->second += q;
    }

    for (const auto& carrier : model.carriers()) {
        auto dem = demand_rate.find(carrier);
        for (int td = 0; td < n_td; ++td)
            for (int h = 0; h < kHoursPerDay; ++h) {
                LPRow row;
                row.rel = Relation::Equal;
                row.rhs = dem == demand_rate.end() ? 0.0 : dem->second(td, h);
                row.name = "bal_" + carrier + "_" + tm.typical_days[td].id + "_" +
                           std::to_string(h);
                for (const auto& t : m.technologies) {
                    auto it = t.conversion.find(carrier);
                    if (it != t.conversion.end())
                        push_term(row, vars.column(VarKind::Activity, t.name, td, h), it->second);
                }
                if (model.find_resource(carrier))
                    push_term(row, vars.column(VarKind::ResourceUse, carrier, td, h), 1.0);
                for (const auto& s : m.storages)
                    if (s.carrier == carrier) {
                        push_term(row, vars.column(VarKind::StorageDischarge, s.name, td, h),
                                  s.eff_out);
                        push_term(row, vars.column(VarKind::StorageCharge, s.name, td, h), -1.0);
                    }
                rows.push_back(std::move(row));
            }
    }
    return rows;
}

void build_capacity_rows(const ValidatedModel& model, LPProblem& lp) {
    const auto& m = model.raw();
    const auto& tm = m.time_mapping;
    const int n_td = tm.day_count();
    const auto& vars = lp.vars;

    // Activity limited by installed capacity and the hourly capacity factor.
    // cpt = 0 pins the activity to zero via its bound instead of a row.
    for (const auto* t : sorted_technologies(m)) {
        const int f_col = vars.column(VarKind::Capacity, t->name);
        for (int td = 0; td < n_td; ++td)
            for (int h = 0; h < kHoursPerDay; ++h) {
                const int a_col = vars.column(VarKind::Activity, t->name, td, h);
                const double cpt = t->cpt(td, h);
                if (cpt == 0.0) {
                    lp.upper[a_col] = 0.0;
                    continue;
                }
                LPRow row;
                row.rel = Relation::LessEq;
                row.rhs = 0.0;
                row.name = "cap_" + t->name + "_" + tm.typical_days[td].id + "_" +
                           std::to_string(h);
                push_term(row, a_col, 1.0);
                push_term(row, f_col, -cpt);
                lp.rows.push_back(std::move(row));
            }
    }

    // Annual availability caps for finite resources.
    for (const auto* r : sorted_resources(m)) {
        if (r->avail == kUnbounded)
            continue;
        LPRow row;
        row.rel = Relation::LessEq;
        row.rhs = r->avail;
        row.name = "avail_" + r->name;
        for (int td = 0; td < n_td; ++td)
            for (int h = 0; h < kHoursPerDay; ++h)
                push_term(row, vars.column(VarKind::ResourceUse, r->name, td, h),
                          tm.typical_days[td].weight_days * tm.t_op_hours);
        lp.rows.push_back(std::move(row));
    }

    // Storage: state-of-charge recursion, cyclic within each typical day,
    // and level bounded by the installed energy capacity.
    for (const auto* s : sorted_storages(m)) {
        const int f_col = vars.column(VarKind::StorageCapacity, s->name);
        for (int td = 0; td < n_td; ++td) {
            for (int h = 0; h < kHoursPerDay; ++h) {
                const int prev = (h + kHoursPerDay - 1) % kHoursPerDay;
                LPRow row;
                row.rel = Relation::Equal;
                row.rhs = 0.0;
                row.name = "soc_" + s->name + "_" + tm.typical_days[td].id + "_" +
                           std::to_string(h);
                push_term(row, vars.column(VarKind::StorageLevel, s->name, td, h), 1.0);
                push_term(row, vars.column(VarKind::StorageLevel, s->name, td, prev), -1.0);
                push_term(row, vars.column(VarKind::StorageCharge, s->name, td, h),
                          -s->eff_in * tm.t_op_hours);
                push_term(row, vars.column(VarKind::StorageDischarge, s->name, td, h),
                          tm.t_op_hours);
                lp.rows.push_back(std::move(row));
            }
            for (int h = 0; h < kHoursPerDay; ++h) {
                LPRow row;
                row.rel = Relation::LessEq;
                row.rhs = 0.0;
                row.name = "socmax_" + s->name + "_" + tm.typical_days[td].id + "_" +
                           std::to_string(h);
                push_term(row, vars.column(VarKind::StorageLevel, s->name, td, h), 1.0);
                push_term(row, f_col, -1.0);
                lp.rows.push_back(std::move(row));
            }
        }
    }

    // Annual share bounds: member production vs. total production of the carrier.
    std::vector<const ShareConstraint*> shares;
    for (const auto& sc : m.shares)
        shares.push_back(&sc);
    std::sort(shares.begin(), shares.end(), [](auto* a, auto* b) { return a->name < b->name; });
    for (const auto* sc : shares) {
        std::set<std::string> members(sc->members.begin(), sc->members.end());
        auto add_share_row = [&](double fraction, Relation rel, const std::string& suffix) {
            LPRow row;
            row.rel = rel;
            row.rhs = 0.0;
            row.name = "share_" + sc->name + "_" + suffix;
            for (const auto& t : m.technologies) {
                auto it = t.conversion.find(sc->carrier);
                if (it == t.conversion.end() || it->second <= 0.0)
                    continue;
                const double member_part = members.count(t.name) ? 1.0 : 0.0;
                for (int td = 0; td < n_td; ++td)
                    for (int h = 0; h < kHoursPerDay; ++h)
                        push_term(row, vars.column(VarKind::Activity, t.name, td, h),
                                  it->second * tm.typical_days[td].weight_days * tm.t_op_hours *
                                      (member_part - fraction));
            }
            if (model.find_resource(sc->carrier))
                for (int td = 0; td < n_td; ++td)
                    for (int h = 0; h < kHoursPerDay; ++h)
                        push_term(row, vars.column(VarKind::ResourceUse, sc->carrier, td, h),
                                  -fraction * tm.typical_days[td].weight_days * tm.t_op_hours);
            lp.rows.push_back(std::move(row));
        };
        if (sc->min_fraction)
            add_share_row(*sc->min_fraction, Relation::GreaterEq, "min");
        if (sc->max_fraction)
            add_share_row(*sc->max_fraction, Relation::LessEq, "max");
    }
}

LPProblem assemble(const ValidatedModel& model, const ObjectiveSpec& spec,
                   std::optional<double> gwp_limit) {
    LPProblem lp;
    lp.vars = build_var_table(model);
    const int n = lp.vars.size();
    lp.lower = Eigen::VectorXd::Zero(n);
    lp.upper = Eigen::VectorXd::Constant(n, kUnbounded);
    for (const auto& t : model.raw().technologies) {
        const int col = lp.vars.column(VarKind::Capacity, t.name);
        lp.lower[col] = t.f_min;
        lp.upper[col] = t.f_max;
    }
    for (const auto& s : model.raw().storages)
        lp.upper[lp.vars.column(VarKind::StorageCapacity, s.name)] = s.f_max;

    lp.objective = build_objective(model, spec, lp.vars);
    lp.rows = build_balance_rows(model, lp.vars);
    build_capacity_rows(model, lp);
    for (auto& row : build_gwp_rows(model, gwp_limit, lp.vars))
        lp.rows.push_back(std::move(row));
    return lp;
}

std::string lp_column_name(const VarKey& key) {
    std::string prefix;
    switch (key.kind) {
    case VarKind::ResourceUse: prefix = "Ft"; break;
    case VarKind::Capacity: prefix = "F"; break;
    case VarKind::Activity: prefix = "A"; break;
    case VarKind::StorageCapacity: prefix = "Fs"; break;
    case VarKind::StorageCharge: prefix = "Sin"; break;
    case VarKind::StorageDischarge: prefix = "Sout"; break;
    case VarKind::StorageLevel: prefix = "Soc"; break;
    }
    std::string entity = key.entity;
    for (char& c : entity)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
            c = '_';
    std::string name = prefix + "." + entity;
    if (key.td >= 0)
        name += "." + std::to_string(key.td) + "." + std::to_string(key.h);
    return name;
}

void write_lp_text(const LPProblem& lp, std::ostream& os) {
    auto row_name = [](const LPRow& row, size_t i) {
        if (row.name.empty())
            return "r" + std::to_string(i);
        std::string n = row.name;
        for (char& c : n)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
                c = '_';
        return n;
    };

    os << "\\ LP export (" << lp.num_vars() << " columns, " << lp.rows.size() << " rows)\n";
    os << "Minimize\n obj:";
    bool first = true;
    for (int j = 0; j < lp.num_vars(); ++j) {
        const double c = lp.objective[j];
        if (c == 0.0)
            continue;
        os << (first ? " " : (c >= 0 ? " + " : " ")) << format_double(c) << " "
           << lp_column_name(lp.vars.key(j));
        first = false;
    }
    if (first)
        os << " 0 " << (lp.num_vars() ? lp_column_name(lp.vars.key(0)) : std::string("x0"));
    os << "\nSubject To\n";
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        const auto& row = lp.rows[i];
        os << " " << row_name(row, i) << ":";
        if (row.terms.empty())
            os << " 0 " << lp_column_name(lp.vars.key(0));
        for (size_t k = 0; k < row.terms.size(); ++k) {
            const auto& [col, coeff] = row.terms[k];
            os << (k == 0 ? " " : (coeff >= 0 ? " + " : " ")) << format_double(coeff) << " "
               << lp_column_name(lp.vars.key(col));
        }
        switch (row.rel) {
        case Relation::LessEq: os << " <= "; break;
        case Relation::Equal: os << " = "; break;
        case Relation::GreaterEq: os << " >= "; break;
        }
        os << format_double(row.rhs) << "\n";
    }
    os << "Bounds\n";
    for (int j = 0; j < lp.num_vars(); ++j) {
        const std::string name = lp_column_name(lp.vars.key(j));
        const double lo = lp.lower[j], hi = lp.upper[j];
        if (lo == 0.0 && hi == kUnbounded)
            continue; // default bound in LP format
        if (lo == hi) {
            os << " " << name << " = " << format_double(lo) << "\n";
            continue;
        }
        if (std::isinf(lo))
            os << " -inf <= " << name;
        else
            os << " " << format_double(lo) << " <= " << name;
        if (std::isinf(hi))
            os << "\n";
        else
            os << " <= " << format_double(hi) << "\n";
    }
    os << "End\n";
}

} // namespace eroiplan
