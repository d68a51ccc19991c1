#pragma once

// Hand-sized models shared across the test suites.

#include "eroiplan/model.hpp"

#include <vector>

namespace fixtures {

using namespace eroiplan;

inline TimeMapping single_day_mapping() {
    TimeMapping tm;
    tm.typical_days = {{"d1", 365.0}};
    return tm;
}

inline TimeMapping monthly_mapping() {
    TimeMapping tm;
    for (int m = 0; m < 12; ++m) {
        static const double days[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
        tm.typical_days.push_back({"m" + std::to_string(m + 1), days[m]});
    }
    return tm;
}

/// One flat electricity demand supplied by a clean (expensive) and a dirty
/// (cheap, emitting) fuel through zero-cost pass-through technologies.
/// Unconstrained optimum burns the dirty fuel; a zero cap forces the clean
/// one at three times the invested energy.
inline EnergySystemModel two_fuel_toy() {
    EnergySystemModel m;
    m.time_mapping = single_day_mapping();

    m.resources.push_back({"clean", 0.3, 0.0, kUnbounded});
    m.resources.push_back({"dirty", 0.1, 267.0, kUnbounded});

    Technology clean_supply;
    clean_supply.name = "clean_supply";
    clean_supply.conversion = {{"elec", 1.0}, {"clean", -1.0}};
    Technology dirty_supply;
    dirty_supply.name = "dirty_supply";
    dirty_supply.conversion = {{"elec", 1.0}, {"dirty", -1.0}};
    m.technologies = {clean_supply, dirty_supply};

    EndUseDemand demand;
    demand.name = "elec_eud";
    demand.carrier = "elec";
    demand.annual = 8760.0;
    m.demands = {demand};

    m.resource_category = {{"clean", "RE-fuels"}, {"dirty", "fossil"}};
    return m;
}

/// Industrial co-generation sized so one unit of heat carries 0.9565 units of
/// electricity and burns 2.1739 units of gas. Electricity demand matches the
/// co-product exactly.
inline EnergySystemModel chp_toy(double heat_annual = 1000.0) {
    EnergySystemModel m;
    m.time_mapping = single_day_mapping();

    m.resources.push_back({"gas", 0.0608, 267.0, kUnbounded});

    Technology chp;
    chp.name = "gas_chp";
    chp.conversion = {{"heat_ht", 1.0}, {"elec", 0.9565}, {"gas", -2.1739}};
    m.technologies = {chp};

    EndUseDemand heat;
    heat.name = "heat_eud";
    heat.carrier = "heat_ht";
    heat.annual = heat_annual;
    EndUseDemand elec;
    elec.name = "elec_eud";
    elec.carrier = "elec";
    elec.annual = 0.9565 * heat_annual;
    m.demands = {heat, elec};
    return m;
}

/// two_fuel_toy plus two disconnected reserve resources whose parameters are
/// provably outside the LP (their carriers have no consumers, so their use is
/// pinned to zero by the balance rows).
inline EnergySystemModel screening_toy() {
    EnergySystemModel m = two_fuel_toy();
    m.resources.push_back({"reserve_a", 0.5, 10.0, 0.0});
    m.resources.push_back({"reserve_b", 0.5, 10.0, 500.0});
    return m;
}

} // namespace fixtures
