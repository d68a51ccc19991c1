#include <doctest.h>

#include "support/testlp.hpp"

#include "eroiplan/simplex.hpp"

#include <cstring>

using namespace eroiplan;
using namespace testlp;

TEST_CASE("min x subject to x >= 1") {
    LPProblem lp = make_lp(1);
    lp.objective[0] = 1.0;
    add_row(lp, {{0, 1.0}}, Relation::GreaterEq, 1.0);
    const Solution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(1.0));
    CHECK(sol.values[0] == doctest::Approx(1.0));
}

TEST_CASE("min -x-y subject to x+y <= 1, x,y >= 0") {
    LPProblem lp = make_lp(2);
    lp.objective << -1.0, -1.0;
    add_row(lp, {{0, 1.0}, {1, 1.0}}, Relation::LessEq, 1.0);
    const Solution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(-1.0));
}

TEST_CASE("unbounded when nothing blocks") {
    LPProblem lp = make_lp(1);
    lp.objective[0] = -1.0;
    const Solution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Unbounded);
    REQUIRE(sol.ray.size() == 1);
    CHECK(sol.ray[0] > 0.0); // improving direction
}

TEST_CASE("infeasible bounds vs row") {
    LPProblem lp = make_lp(1);
    lp.upper[0] = 1.0;
    add_row(lp, {{0, 1.0}}, Relation::GreaterEq, 2.0);
    const Solution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Infeasible);
}

TEST_CASE("equality row with negative rhs and free variable") {
    LPProblem lp = make_lp(2);
    lp.lower[0] = -kUnbounded; // free
    lp.objective << 1.0, 1.0;
    add_row(lp, {{0, 1.0}, {1, 1.0}}, Relation::Equal, -3.0);
    const Solution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(-3.0));
}

TEST_CASE("empty problem is trivially optimal") {
    LPProblem lp = make_lp(0);
    const Solution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == 0.0);
}

TEST_CASE("bound flip path: boxed variable with no rows") {
    LPProblem lp = make_lp(2);
    lp.upper << 2.0, 3.0;
    lp.objective << -1.0, 0.5;
    const Solution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(-2.0));
    CHECK(sol.values[0] == doctest::Approx(2.0));
    CHECK(sol.values[1] == doctest::Approx(0.0));
}

TEST_CASE("200 random LPs match the vertex-enumeration oracle") {
    Rng rng(20240901);
    int feasible_count = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const LPProblem lp = random_boxed_lp(rng);
        const OracleResult expect = enumerate_vertices(lp);
        const Solution sol = solve(lp);
        CAPTURE(trial);
        if (expect.feasible) {
            ++feasible_count;
            REQUIRE(sol.status == SolveStatus::Optimal);
            CHECK(std::abs(sol.objective - expect.objective) <=
                  1e-6 * std::max(1.0, std::abs(expect.objective)));
        } else {
            REQUIRE(sol.status == SolveStatus::Infeasible);
        }
    }
    CHECK(feasible_count > 50); // the generator must exercise both outcomes
}

TEST_CASE("determinism: identical input gives bit-identical values") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const LPProblem lp = random_boxed_lp(rng);
        const Solution a = solve(lp);
        const Solution b = solve(lp);
        REQUIRE(a.status == b.status);
        if (a.status == SolveStatus::Optimal) {
            REQUIRE(a.values.size() == b.values.size());
            CHECK(std::memcmp(a.values.data(), b.values.data(),
                              sizeof(double) * a.values.size()) == 0);
        }
    }
}

TEST_CASE("objective scaling: solve(k*c) returns k*objective and the same vertex") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        LPProblem lp = random_boxed_lp(rng);
        const Solution base = solve(lp);
        LPProblem scaled = lp;
        scaled.objective *= 3.5;
        const Solution s = solve(scaled);
        REQUIRE(base.status == s.status);
        if (base.status == SolveStatus::Optimal) {
            CHECK(s.objective == doctest::Approx(3.5 * base.objective).epsilon(1e-9));
            CHECK((s.values - base.values).lpNorm<Eigen::Infinity>() == 0.0);
        }
    }
}

TEST_CASE("strong duality on the oracle suite") {
    Rng rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
        const LPProblem lp = random_boxed_lp(rng);
        const Solution sol = solve(lp);
        if (sol.status != SolveStatus::Optimal)
            continue;
        const double dual = dual_objective(lp, sol);
        CHECK(std::abs(dual - sol.objective) <=
              1e-6 * std::max(1.0, std::abs(sol.objective)));
    }
}

TEST_CASE("check_solution reports residuals") {
    LPProblem lp = make_lp(2);
    lp.objective << 1.0, 2.0;
    add_row(lp, {{0, 1.0}, {1, 1.0}}, Relation::Equal, 2.0);
    const Solution sol = solve(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);

    SUBCASE("exact vertex has zero residuals") {
        const CheckReport r = check_solution(lp, sol);
        CHECK(r.max_row_violation <= 1e-12);
        CHECK(r.max_bound_violation <= 1e-12);
        CHECK(r.objective_gap <= 1e-12);
    }
    SUBCASE("perturbing values by 1e-3 shows up in the report") {
        Solution bad = sol;
        bad.values[0] += 1e-3;
        const CheckReport r = check_solution(lp, bad);
        CHECK(r.max_row_violation == doctest::Approx(1e-3).epsilon(1e-6));
    }
    SUBCASE("oracle suite residuals stay below 1e-8") {
        Rng rng(3141);
        for (int trial = 0; trial < 60; ++trial) {
            const LPProblem random_lp = random_boxed_lp(rng);
            const Solution s = solve(random_lp);
            if (s.status != SolveStatus::Optimal)
                continue;
            const CheckReport r = check_solution(random_lp, s);
            CHECK(r.max_row_violation <= 1e-8);
            CHECK(r.max_bound_violation <= 1e-8);
            CHECK(r.objective_gap <= 1e-8);
        }
    }
}
