#include <doctest.h>

#include "support/fixtures.hpp"

#include "eroiplan/scenario.hpp"

using namespace eroiplan;

TEST_CASE("reference run on the toy picks the dirty fuel and records emissions") {
    const ValidatedModel vm = validate(fixtures::two_fuel_toy());
    const ScenarioResult ref = run_reference(vm, {});
    REQUIRE(ref.status == SolveStatus::Optimal);
    CHECK(!ref.gwp_limit.has_value());
    CHECK(ref.objective == doctest::Approx(876.0).epsilon(1e-9));
    REQUIRE(ref.report.has_value());
    CHECK(ref.report->gwp.op_by_res.at("dirty") ==
          doctest::Approx(267.0 * 8760.0).epsilon(1e-9));
}

TEST_CASE("all-renewable model has zero operation emissions") {
    EnergySystemModel m = fixtures::two_fuel_toy();
    for (auto& r : m.resources)
        r.gwp_op = 0.0;
    const ValidatedModel vm = validate(m);
    const ScenarioResult ref = run_reference(vm, {});
    REQUIRE(ref.status == SolveStatus::Optimal);
    double gwp_op = 0.0;
    for (const auto& [k, v] : ref.report->gwp.op_by_res)
        gwp_op += v;
    CHECK(gwp_op == 0.0);
    // No baseline to step from.
    CHECK_THROWS_AS(run_sweep(vm, {}), std::runtime_error);
}

TEST_CASE("empty model reference solves to zero") {
    EnergySystemModel m;
    m.time_mapping = fixtures::single_day_mapping();
    const ValidatedModel vm = validate(m);
    const ScenarioResult ref = run_reference(vm, {});
    REQUIRE(ref.status == SolveStatus::Optimal);
    CHECK(ref.objective == 0.0);
}

TEST_CASE("sweep target counts follow the step rule") {
    const ValidatedModel vm = validate(fixtures::two_fuel_toy());
    SUBCASE("5% steps give 20 targets") {
        const SweepResult sweep = run_sweep(vm, {}, 0.05);
        CHECK(sweep.targets.size() == 20);
    }
    SUBCASE("50% steps give 2 targets, the last at zero") {
        const SweepResult sweep = run_sweep(vm, {}, 0.5);
        REQUIRE(sweep.targets.size() == 2);
        REQUIRE(sweep.targets[1].gwp_limit.has_value());
        CHECK(*sweep.targets[1].gwp_limit == doctest::Approx(0.0));
    }
}

TEST_CASE("sweep on the toy") {
    const ValidatedModel vm = validate(fixtures::two_fuel_toy());
    const SweepResult sweep = run_sweep(vm, {}, 0.05, /*threads=*/2);

    SUBCASE("baseline equals the reference operation emissions") {
        double gwp_op = 0.0;
        for (const auto& [k, v] : sweep.reference.report->gwp.op_by_res)
            gwp_op += v;
        CHECK(sweep.baseline_gwp_op ==
              doctest::Approx(gwp_op).epsilon(1e-6));
        // No construction emissions in the toy, so gwp_tot matches too.
        CHECK(sweep.reference.report->gwp.total ==
              doctest::Approx(sweep.baseline_gwp_op).epsilon(1e-6));
    }
    SUBCASE("targets are ordered by descending limit and all solved") {
        for (size_t i = 0; i < sweep.targets.size(); ++i) {
            REQUIRE(sweep.targets[i].status == SolveStatus::Optimal);
            REQUIRE(sweep.targets[i].gwp_limit.has_value());
            if (i > 0)
                CHECK(*sweep.targets[i].gwp_limit < *sweep.targets[i - 1].gwp_limit);
        }
    }
    SUBCASE("invested energy is non-decreasing along the sweep") {
        double previous = sweep.reference.objective;
        for (const auto& t : sweep.targets) {
            CHECK(t.objective >= previous - 1e-9 * std::max(1.0, previous));
            previous = t.objective;
        }
    }
    SUBCASE("snapshot independence: a re-solved target matches its sweep entry") {
        const ScenarioResult again =
            run_scenario(vm, {}, *sweep.targets[7].gwp_limit);
        CHECK(again.objective == doctest::Approx(sweep.targets[7].objective).epsilon(1e-12));
    }
}

TEST_CASE("non-binding cap reproduces the reference solution") {
    const ValidatedModel vm = validate(fixtures::two_fuel_toy());
    const ScenarioResult ref = run_reference(vm, {});
    const ScenarioResult capped = run_scenario(vm, {}, 2.0 * ref.report->gwp.total);
    REQUIRE(capped.status == SolveStatus::Optimal);
    CHECK(capped.objective == doctest::Approx(ref.objective).epsilon(1e-9));
    CHECK(capped.report->eroi == doctest::Approx(ref.report->eroi).epsilon(1e-9));
    CHECK(capped.report->e_in.total == doctest::Approx(ref.report->e_in.total).epsilon(1e-9));
}

TEST_CASE("infeasible targets are retained with their status") {
    // Force infeasibility below a positive floor: construction emissions of a
    // mandatory technology exceed tight caps.
    EnergySystemModel m = fixtures::two_fuel_toy();
    m.technologies[0].gwp_constr = 1e5;
    m.technologies[0].lifetime = 1.0;
    m.technologies[0].f_min = 1.0;
    m.technologies[0].f_max = 1.0;
    const ValidatedModel vm = validate(m);
    const SweepResult sweep = run_sweep(vm, {}, 0.25);
    REQUIRE(sweep.targets.size() == 4);
    CHECK(sweep.targets.back().status == SolveStatus::Infeasible);
    CHECK(!sweep.targets.back().report.has_value());
    bool any_optimal = false;
    for (const auto& t : sweep.targets)
        any_optimal |= (t.status == SolveStatus::Optimal);
    CHECK(any_optimal);
}
