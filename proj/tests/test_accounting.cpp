#include <doctest.h>

#include "support/fixtures.hpp"

#include "eroiplan/accounting.hpp"
#include "eroiplan/lp.hpp"
#include "eroiplan/simplex.hpp"

using namespace eroiplan;

namespace {

struct Solved {
    ValidatedModel model;
    LPProblem lp;
    Solution solution;
};

Solved solve_model(const EnergySystemModel& m, std::optional<double> gwp_limit = std::nullopt) {
    ValidatedModel vm = validate(m);
    LPProblem lp = assemble(vm, {}, gwp_limit);
    Solution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    return {std::move(vm), std::move(lp), std::move(sol)};
}

} // namespace

TEST_CASE("construction term: 1 GW at 2600 GWh/GW over 25 years gives 104 GWh/y") {
    EnergySystemModel m;
    m.time_mapping = fixtures::single_day_mapping();
    Technology nuclear;
    nuclear.name = "nuclear";
    nuclear.e_constr = 2600.0;
    nuclear.lifetime = 25.0;
    nuclear.f_min = 1.0; // forced build
    nuclear.f_max = 1.0;
    nuclear.conversion = {{"elec", 1.0}};
    m.technologies = {nuclear};
    const Solved s = solve_model(m);
    const EnergyInvestedBreakdown einv = compute_einv(s.model, s.lp, s.solution);
    CHECK(einv.constr_by_tech.at("nuclear") == doctest::Approx(104.0));
    CHECK(einv.total == doctest::Approx(104.0));
}

TEST_CASE("zero-activity solution has zero operation terms") {
    EnergySystemModel m = fixtures::two_fuel_toy();
    m.demands.clear();
    const Solved s = solve_model(m);
    const EnergyInvestedBreakdown einv = compute_einv(s.model, s.lp, s.solution);
    CHECK(einv.op_by_res.at("clean") == 0.0);
    CHECK(einv.op_by_res.at("dirty") == 0.0);
}

TEST_CASE("energy-invested total equals the solver objective") {
    const Solved s = solve_model(fixtures::two_fuel_toy());
    const EnergyInvestedBreakdown einv = compute_einv(s.model, s.lp, s.solution);
    CHECK(einv.total ==
          doctest::Approx(s.solution.objective).epsilon(1e-6));
}

TEST_CASE("gwp breakdown") {
    SUBCASE("1 GWh/y of a 267 t/GWh resource emits 267 t/y") {
        EnergySystemModel m = fixtures::two_fuel_toy();
        m.demands[0].annual = 1.0;
        const Solved s = solve_model(m);
        const GwpBreakdown gwp = compute_gwp(s.model, s.lp, s.solution);
        CHECK(gwp.op_by_res.at("dirty") == doctest::Approx(267.0).epsilon(1e-9));
    }
    SUBCASE("zero-gwp resources contribute nothing") {
        const Solved s = solve_model(fixtures::two_fuel_toy(), 0.0);
        const GwpBreakdown gwp = compute_gwp(s.model, s.lp, s.solution);
        CHECK(gwp.op_by_res.at("clean") == 0.0);
        CHECK(gwp.total == doctest::Approx(0.0));
    }
    SUBCASE("unconstrained toy total matches the hand sum") {
        const Solved s = solve_model(fixtures::two_fuel_toy());
        const GwpBreakdown gwp = compute_gwp(s.model, s.lp, s.solution);
        CHECK(gwp.total == doctest::Approx(267.0 * 8760.0).epsilon(1e-9));
    }
    SUBCASE("active cap is respected within tolerance") {
        const double cap = 0.5 * 267.0 * 8760.0;
        const Solved s = solve_model(fixtures::two_fuel_toy(), cap);
        const GwpBreakdown gwp = compute_gwp(s.model, s.lp, s.solution);
        CHECK(gwp.total <= cap + 1e-6 * cap);
    }
}

TEST_CASE("FEC allocation") {
    SUBCASE("gas CHP worked example: heat carries 1/(1+0.9565) of the fuel") {
        const Solved s = solve_model(fixtures::chp_toy(1000.0));
        const CarrierFec heat = fec_of_carrier(s.model, s.lp, s.solution, "heat_ht");
        REQUIRE(heat.producers.size() == 1);
        CHECK(heat.producers[0].fec / 1000.0 ==
              doctest::Approx(2.1739 / (1.0 + 0.9565)).epsilon(1e-9));
        // per unit of heat: 1.11133... ~ the worked 1.111
        CHECK(heat.producers[0].fec / 1000.0 == doctest::Approx(1.111).epsilon(1e-3));

        // Heat and electricity shares exhaust the fuel exactly.
        const CarrierFec elec = fec_of_carrier(s.model, s.lp, s.solution, "elec");
        CHECK(heat.total + elec.total == doctest::Approx(2.1739 * 1000.0).epsilon(1e-9));
    }
    SUBCASE("direct resource supply passes through") {
        EnergySystemModel m;
        m.time_mapping = fixtures::single_day_mapping();
        m.resources.push_back({"methanol", 0.0798, 350.0, kUnbounded});
        EndUseDemand d;
        d.name = "ned";
        d.carrier = "methanol";
        d.annual = 7.0;
        m.demands = {d};
        const Solved s = solve_model(m);
        const FecBreakdown fec = compute_fec(s.model, s.lp, s.solution);
        CHECK(fec.by_eud.at("ned") == doctest::Approx(7.0).epsilon(1e-9));
    }
    SUBCASE("pro-rata correction: p1=6, p2=4, c=2 gives 4.8 and 3.2") {
        // Two supply routes and one consumer of the carrier; activities are
        // pinned by capacity bounds so the split is exact.
        EnergySystemModel m;
        m.time_mapping = fixtures::single_day_mapping();
        m.resources.push_back({"fa", 0.1, 0.0, kUnbounded});
        m.resources.push_back({"fb", 0.2, 0.0, kUnbounded});
        Technology pa, pb, sink;
        pa.name = "pa";
        pa.conversion = {{"x", 1.0}, {"fa", -1.0}};
        pa.f_min = pa.f_max = 6.0 / 8760.0;
        pa.e_constr = 0.0;
        pb.name = "pb";
        pb.conversion = {{"x", 1.0}, {"fb", -1.0}};
        pb.f_min = pb.f_max = 4.0 / 8760.0;
        sink.name = "sink";
        sink.conversion = {{"y", 1.0}, {"x", -1.0}};
        m.technologies = {pa, pb, sink};
        EndUseDemand dx, dy;
        dx.name = "x_eud";
        dx.carrier = "x";
        dx.annual = 8.0;
        dy.name = "y_eud";
        dy.carrier = "y";
        dy.annual = 2.0;
        m.demands = {dx, dy};
        // Producers must run at full pinned capacity to cover x_eud + sink.
        const Solved s = solve_model(m);
        const CarrierFec fx = fec_of_carrier(s.model, s.lp, s.solution, "x");
        REQUIRE(fx.producers.size() == 2);
        CHECK(fx.consumed == doctest::Approx(2.0).epsilon(1e-9));
        for (const auto& pr : fx.producers) {
            if (pr.name == "pa") {
                CHECK(pr.production == doctest::Approx(6.0).epsilon(1e-9));
                CHECK(pr.corrected == doctest::Approx(4.8).epsilon(1e-9));
            } else {
                CHECK(pr.production == doctest::Approx(4.0).epsilon(1e-9));
                CHECK(pr.corrected == doctest::Approx(3.2).epsilon(1e-9));
            }
        }
        // Conservation: corrected productions sum to production minus consumption.
        double sum_corrected = 0.0, sum_p = 0.0;
        for (const auto& pr : fx.producers) {
            sum_corrected += pr.corrected;
            sum_p += pr.production;
        }
        CHECK(sum_corrected == doctest::Approx(sum_p - fx.consumed).epsilon(1e-12));
        // Allocation fractions stay inside [0,1].
        for (const auto& pr : fx.producers) {
            if (pr.resource_style)
                continue;
            const double denom = pr.corrected + pr.other_outputs;
            if (denom > 0.0) {
                CHECK(pr.corrected / denom >= 0.0);
                CHECK(pr.corrected / denom <= 1.0 + 1e-12);
            }
        }
    }
    SUBCASE("guarded division: idle producer contributes zero") {
        EnergySystemModel m = fixtures::two_fuel_toy();
        const Solved s = solve_model(m); // clean route stays idle
        const CarrierFec fec = fec_of_carrier(s.model, s.lp, s.solution, "elec");
        for (const auto& pr : fec.producers)
            if (pr.name == "clean_supply")
                CHECK(pr.fec == 0.0);
    }
}

TEST_CASE("EROI") {
    SUBCASE("FEC 100 over E_in 25 gives 4") {
        AccountingReport r;
        r.fec.total = 100.0;
        r.e_in.total = 25.0;
        CHECK(compute_eroi(r) == doctest::Approx(4.0));
    }
    SUBCASE("homogeneity: scaling both keeps the ratio") {
        AccountingReport r;
        r.fec.total = 123.0;
        r.e_in.total = 41.0;
        const double base = compute_eroi(r);
        r.fec.total *= 17.5;
        r.e_in.total *= 17.5;
        CHECK(compute_eroi(r) == doctest::Approx(base).epsilon(1e-12));
    }
    SUBCASE("zero invested energy is degenerate") {
        AccountingReport r;
        r.fec.total = 1.0;
        r.e_in.total = 0.0;
        CHECK_THROWS_AS(compute_eroi(r), DegenerateSystem);
    }
    SUBCASE("toy fixture EROI against the hand calculation") {
        const Solved s = solve_model(fixtures::two_fuel_toy());
        const AccountingReport r = account(s.model, s.lp, s.solution);
        // FEC = 8760 (supply-route inputs), E_in = 0.1 * 8760.
        CHECK(r.eroi == doctest::Approx(10.0).epsilon(1e-9));
    }
}

TEST_CASE("primary mix") {
    SUBCASE("single used resource holds the full share with its tag") {
        const Solved s = solve_model(fixtures::two_fuel_toy());
        const PrimaryMix mix = primary_mix(s.model, s.lp, s.solution);
        REQUIRE(mix.size() == 1);
        CHECK(mix.at("dirty").share == doctest::Approx(1.0));
        CHECK(mix.at("dirty").annual_gwh == doctest::Approx(8760.0).epsilon(1e-9));
        CHECK(mix.at("dirty").category == "fossil");
    }
    SUBCASE("zero-use resources are absent") {
        const Solved s = solve_model(fixtures::two_fuel_toy());
        const PrimaryMix mix = primary_mix(s.model, s.lp, s.solution);
        CHECK(mix.count("clean") == 0);
    }
    SUBCASE("shares sum to one under a binding cap") {
        const double cap = 0.5 * 267.0 * 8760.0;
        const Solved s = solve_model(fixtures::two_fuel_toy(), cap);
        const PrimaryMix mix = primary_mix(s.model, s.lp, s.solution);
        REQUIRE(mix.size() == 2);
        double total = 0.0;
        for (const auto& [name, e] : mix)
            total += e.share;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        // Hand computation: the cap halves dirty use; clean covers the rest.
        CHECK(mix.at("dirty").annual_gwh == doctest::Approx(4380.0).epsilon(1e-6));
        CHECK(mix.at("clean").annual_gwh == doctest::Approx(4380.0).epsilon(1e-6));
    }
}

TEST_CASE("report invariants hold on solved fixtures") {
    for (std::optional<double> cap :
         std::vector<std::optional<double>>{std::nullopt, 267.0 * 8760.0 * 0.3}) {
        const Solved s = solve_model(fixtures::two_fuel_toy(), cap);
        const AccountingReport r = account(s.model, s.lp, s.solution);
        double e_sum = 0.0;
        for (const auto& [k, v] : r.e_in.constr_by_tech)
            e_sum += v;
        for (const auto& [k, v] : r.e_in.op_by_res)
            e_sum += v;
        CHECK(r.e_in.total == doctest::Approx(e_sum).epsilon(1e-6));
        double g_sum = 0.0;
        for (const auto& [k, v] : r.gwp.constr_by_tech)
            g_sum += v;
        for (const auto& [k, v] : r.gwp.op_by_res)
            g_sum += v;
        CHECK(r.gwp.total == doctest::Approx(g_sum).epsilon(1e-6));
        CHECK(r.eroi == doctest::Approx(r.fec.total / r.e_in.total).epsilon(1e-12));
        CHECK(r.e_in.total == doctest::Approx(s.solution.objective).epsilon(1e-6));
        if (cap)
            CHECK(r.gwp.total <= *cap + 1e-6 * std::abs(*cap));
    }
}
