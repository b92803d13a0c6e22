#include <catch_amalgamated.hpp>

#include "knapgap/generator.hpp"
#include "knapgap/oracle.hpp"
#include "knapgap/simplex.hpp"
#include "support/helpers.hpp"

using namespace knapgap;
using knapgap::testing::example_instance;
using knapgap::testing::make_instance;

TEST_CASE("brute force finds the lexicographically smallest optimum") {
    const OracleResult r = brute_force(example_instance());
    REQUIRE(r.status == OracleStatus::Optimal);
    CHECK(r.value == 1);
    CHECK(r.x == std::vector<long long>{0, 1});  // (1,0) ties but is larger
    CHECK(r.states == 4);
}

TEST_CASE("covering brute force and zero-limit packing") {
    const OracleResult cov = brute_force(example_instance(Sense::Covering));
    REQUIRE(cov.status == OracleStatus::Optimal);
    CHECK(cov.value == 2);
    CHECK(cov.x == std::vector<long long>{1, 1});

    const OracleResult zero = brute_force(make_instance(Sense::Packing, {{1}}, {0}, {5}, {3}));
    REQUIRE(zero.status == OracleStatus::Optimal);
    CHECK(zero.value == 0);
    CHECK(zero.x == std::vector<long long>{0});
}

TEST_CASE("infeasible covering is reported") {
    const OracleResult r = brute_force(make_instance(Sense::Covering, {{1}}, {5}, {1}, {2}));
    CHECK(r.status == OracleStatus::Infeasible);
    const OracleResult dp = dp_solve(make_instance(Sense::Covering, {{1}}, {5}, {1}, {2}));
    CHECK(dp.status == OracleStatus::Infeasible);
}

TEST_CASE("dynamic program matches the examples") {
    CHECK(dp_solve(example_instance()).value == 1);
    const KnapsackInstance classic =
        make_instance(Sense::Packing, {{1, 2, 3}}, {4}, {1, 2, 3}, {1, 1, 1});
    const OracleResult dp = dp_solve(classic);
    const OracleResult bf = brute_force(classic);
    CHECK(dp.value == 4);
    CHECK(bf.value == 4);
    CHECK(dp_solve(example_instance(Sense::Covering)).value == 2);
}

TEST_CASE("budgets fail loudly") {
    const KnapsackInstance big =
        make_instance(Sense::Packing, {{1, 1, 1}}, {1000}, {1, 1, 1}, {100, 100, 100});
    CHECK_THROWS_AS(brute_force(big, 1000), BudgetExceededError);
    CHECK_THROWS_AS(dp_solve(big, 100), BudgetExceededError);
    CHECK_THROWS_AS(brute_force(make_instance(Sense::Packing, {{1}}, {3}, {1}, {-1})),
                    ContractViolation);  // unbounded d requires capping first
}

TEST_CASE("oracles agree with each other and respect the relaxation bound") {
    for (unsigned long long seed = 0; seed < 80; ++seed) {
        GenParams params;
        params.k = 1 + (int)(seed % 3);
        params.n = 1 + (int)(seed % 6);
        params.weight_max = 6;
        params.cost_den_max = seed % 3 == 2 ? 2 : 1;
        params.sense = seed % 2 == 0 ? Sense::Packing : Sense::Covering;
        params.tightness = Rational(1 + seed % 3, 4);
        const KnapsackInstance inst = generate_random(params, mix_seed(17, seed));
        const OracleResult bf = brute_force(inst);
        const OracleResult dp = dp_solve(inst);
        REQUIRE(bf.status == dp.status);
        if (bf.status != OracleStatus::Optimal) continue;
        CHECK(bf.value == dp.value);
        CHECK(is_feasible(inst, dp.x));
        CHECK(solution_value(inst, dp.x) == dp.value);
        const LpSolution lp = solve_lp(naive_relaxation(inst));
        REQUIRE(lp.status == LpStatus::Optimal);
        if (inst.sense == Sense::Packing)
            CHECK(bf.value <= lp.objective_value);
        else
            CHECK(bf.value >= lp.objective_value);
    }
}

TEST_CASE("degenerate dimensions") {
    const OracleResult empty = brute_force(make_instance(Sense::Packing, {}, {}, {}, {}));
    REQUIRE(empty.status == OracleStatus::Optimal);
    CHECK(empty.value == 0);

    // k = 0: brute force ranges over the whole box
    const KnapsackInstance box = make_instance(Sense::Packing, {}, {}, {2, 1}, {1, 2});
    const OracleResult r = brute_force(box);
    CHECK(r.value == 4);
    CHECK(dp_solve(box).value == 4);
}
