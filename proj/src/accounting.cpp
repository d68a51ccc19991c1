#include "eroiplan/accounting.hpp"

#include <algorithm>
#include <cmath>

namespace eroiplan {

TdSeries var_series(const LPProblem& lp, const Solution& solution, VarKind kind,
                    const std::string& entity, const TimeMapping& mapping) {
    const int n_td = mapping.day_count();
    TdSeries s = TdSeries::Zero(n_td, kHoursPerDay);
    for (int td = 0; td < n_td; ++td)
        for (int h = 0; h < kHoursPerDay; ++h) {
            const int col = lp.vars.find(kind, entity, td, h);
            if (col >= 0)
                s(td, h) = solution.values[col];
        }
    return s;
}

double annual_resource_use(const ValidatedModel& model, const LPProblem& lp,
                           const Solution& solution, const std::string& resource) {
    return annualize(var_series(lp, solution, VarKind::ResourceUse, resource,
                                model.time_mapping()),
                     model.time_mapping());
}

double annual_activity(const ValidatedModel& model, const LPProblem& lp,
                       const Solution& solution, const std::string& tech) {
    return annualize(var_series(lp, solution, VarKind::Activity, tech, model.time_mapping()),
                     model.time_mapping());
}

EnergyInvestedBreakdown compute_einv(const ValidatedModel& model, const LPProblem& lp,
                                     const Solution& solution) {
    EnergyInvestedBreakdown out;
    for (const auto& t : model.raw().technologies) {
        const double f = solution.values[lp.vars.column(VarKind::Capacity, t.name)];
        out.constr_by_tech[t.name] = t.e_constr * f / t.lifetime;
    }
    for (const auto& s : model.raw().storages) {
        const double f = solution.values[lp.vars.column(VarKind::StorageCapacity, s.name)];
        out.constr_by_tech[s.name] = s.e_constr * f / s.lifetime;
    }
    for (const auto& r : model.raw().resources)
        out.op_by_res[r.name] = r.e_op * annual_resource_use(model, lp, solution, r.name);
    for (const auto& [name, v] : out.constr_by_tech)
        out.total += v;
    for (const auto& [name, v] : out.op_by_res)
        out.total += v;
    return out;
}

GwpBreakdown compute_gwp(const ValidatedModel& model, const LPProblem& lp,
                         const Solution& solution) {
    GwpBreakdown out;
    for (const auto& t : model.raw().technologies) {
        const double f = solution.values[lp.vars.column(VarKind::Capacity, t.name)];
        out.constr_by_tech[t.name] = t.gwp_constr * f / t.lifetime;
    }
    for (const auto& s : model.raw().storages) {
        const double f = solution.values[lp.vars.column(VarKind::StorageCapacity, s.name)];
        out.constr_by_tech[s.name] = s.gwp_constr * f / s.lifetime;
    }
    for (const auto& r : model.raw().resources)
        out.op_by_res[r.name] = r.gwp_op * annual_resource_use(model, lp, solution, r.name);
    for (const auto& [name, v] : out.constr_by_tech)
        out.total += v;
    for (const auto& [name, v] : out.op_by_res)
        out.total += v;
    return out;
}

CarrierFec fec_of_carrier(const ValidatedModel& model, const LPProblem& lp,
                          const Solution& solution, const std::string& carrier) {
    const auto& m = model.raw();
    CarrierFec out;

    for (const auto& t : m.technologies) {
        auto it = t.conversion.find(carrier);
        if (it == t.conversion.end() || it->second == 0.0)
            continue;
        const double act = annual_activity(model, lp, solution, t.name);
        if (it->second < 0.0) {
            out.consumed += -it->second * act;
            continue;
        }
        FecProducer pr;
        pr.name = t.name;
        pr.production = it->second * act;
        for (const auto& [c2, coeff] : t.conversion) {
            if (c2 == carrier)
                continue;
            if (coeff > 0.0)
                pr.other_outputs += coeff * act;
            else
                pr.inputs += -coeff * act;
        }
        out.producers.push_back(std::move(pr));
    }

    if (model.find_resource(carrier)) {
        FecProducer pr;
        pr.name = carrier;
        pr.production = annual_resource_use(model, lp, solution, carrier);
        pr.resource_style = true;
        out.producers.push_back(std::move(pr));
    }

    for (const auto& s : m.storages) {
        if (s.carrier != carrier)
            continue;
        const double charge =
            annualize(var_series(lp, solution, VarKind::StorageCharge, s.name,
                                 model.time_mapping()),
                      model.time_mapping());
        const double discharge =
            annualize(var_series(lp, solution, VarKind::StorageDischarge, s.name,
                                 model.time_mapping()),
                      model.time_mapping());
        out.consumed += charge;
        FecProducer pr;
        pr.name = s.name;
        pr.production = s.eff_out * discharge;
        pr.inputs = charge; // round-trip losses land on this carrier
        out.producers.push_back(std::move(pr));
    }

    double total_p = 0.0;
    for (const auto& pr : out.producers)
        total_p += pr.production;

    // Pro-rata correction when the carrier is itself consumed (I != empty):
    // corrected productions sum to total_p - consumed exactly.
    const double scale = (out.consumed > 0.0 && total_p > 0.0)
                             ? std::max(0.0, (total_p - out.consumed) / total_p)
                             : 1.0;

    for (auto& pr : out.producers) {
        pr.corrected = pr.production * scale;
        if (pr.resource_style) {
            pr.fec = pr.corrected;
        } else {
            const double denom = pr.corrected + pr.other_outputs;
            pr.fec = denom > 0.0 ? pr.corrected / denom * pr.inputs : 0.0; // guarded
        }
        out.total += pr.fec;
    }
    return out;
}

FecBreakdown compute_fec(const ValidatedModel& model, const LPProblem& lp,
                         const Solution& solution) {
    const auto& m = model.raw();
    // Demands sharing a carrier split the carrier's FEC pro-rata by volume.
    std::map<std::string, double> carrier_demand;
    for (const auto& d : m.demands)
        carrier_demand[d.carrier] += d.annual;

    std::map<std::string, double> carrier_total;
    for (const auto& [carrier, annual] : carrier_demand)
        carrier_total[carrier] = fec_of_carrier(model, lp, solution, carrier).total;

    FecBreakdown out;
    for (const auto& d : m.demands) {
        const double total_annual = carrier_demand[d.carrier];
        const double share = total_annual > 0.0 ? d.annual / total_annual : 0.0;
        out.by_eud[d.name] = share * carrier_total[d.carrier];
    }
    for (const auto& [name, v] : out.by_eud)
        out.total += v;
    return out;
}

double compute_eroi(const AccountingReport& report) {
    if (report.e_in.total <= 0.0)
        throw DegenerateSystem("EROI undefined: zero energy invested");
    return report.fec.total / report.e_in.total;
}

PrimaryMix primary_mix(const ValidatedModel& model, const LPProblem& lp,
                       const Solution& solution) {
    PrimaryMix mix;
    double total = 0.0;
    for (const auto& r : model.raw().resources) {
        const double use = annual_resource_use(model, lp, solution, r.name);
        if (use > 0.0) {
            mix[r.name] = MixEntry{use, 0.0, model.category_of(r.name)};
            total += use;
        }
    }
    // Drop numerically negligible entries, then normalize shares.
    for (auto it = mix.begin(); it != mix.end();) {
        if (it->second.annual_gwh <= 1e-9 * std::max(total, 1.0))
            it = mix.erase(it);
        else
            ++it;
    }
    total = 0.0;
    for (const auto& [name, e] : mix)
        total += e.annual_gwh;
    if (total > 0.0)
        for (auto& [name, e] : mix)
            e.share = e.annual_gwh / total;
    return mix;
}

AccountingReport account(const ValidatedModel& model, const LPProblem& lp,
                         const Solution& solution) {
    AccountingReport report;
    report.e_in = compute_einv(model, lp, solution);
    report.gwp = compute_gwp(model, lp, solution);
    report.fec = compute_fec(model, lp, solution);
    report.primary_mix = primary_mix(model, lp, solution);
    report.eroi = report.e_in.total > 0.0 ? report.fec.total / report.e_in.total : 0.0;
    return report;
}

} // namespace eroiplan
