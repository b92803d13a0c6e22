#include <catch_amalgamated.hpp>

#include "knapgap/generator.hpp"
#include "knapgap/rounding.hpp"
#include "knapgap/simplex.hpp"
#include "support/helpers.hpp"

using namespace knapgap;
using knapgap::testing::example_instance;
using knapgap::testing::make_instance;

TEST_CASE("component-wise floor and ceiling") {
    CHECK(round_down({Rational(1), Rational(2, 3)}) == std::vector<long long>{1, 0});
    CHECK(round_down({Rational(0), Rational(0)}) == std::vector<long long>{0, 0});
    CHECK(round_down({Rational(7, 2), Rational(2)}) == std::vector<long long>{3, 2});
    CHECK(round_up({Rational(1, 2), Rational(2)}) == std::vector<long long>{1, 2});
    CHECK_THROWS_AS(round_down({Rational(-1, 2)}), ContractViolation);
}

TEST_CASE("packing extreme point rounds down within the additive bound") {
    const NormalizedInstance norm = normalize(example_instance());
    const LpSolution sol = solve_lp(naive_relaxation(norm.base));
    REQUIRE(sol.status == LpStatus::Optimal);
    REQUIRE(sol.x == RationalVector{1, Rational(2, 3)});
    const auto [rounded, report] = round_extreme_packing(norm, sol);
    CHECK(rounded.x == std::vector<long long>{1, 0});
    CHECK(rounded.value == 1);
    CHECK(report.c_max == 1);
    CHECK(report.bound == 1);
    CHECK(report.loss == Rational(2, 3));
    // value 1 >= 5/3 - 1*1
    CHECK(rounded.value >= sol.objective_value - report.bound);
}

TEST_CASE("integral and all-zero points round to themselves") {
    const NormalizedInstance norm =
        normalize(make_instance(Sense::Packing, {{2, 3}}, {2}, {1, 1}, {1, 1}));
    const LpSolution sol = solve_lp(naive_relaxation(norm.base));
    REQUIRE(sol.status == LpStatus::Optimal);
    const auto [rounded, report] = round_extreme_packing(norm, sol);
    RationalVector back(rounded.x.begin(), rounded.x.end());
    CHECK(back == sol.x);
    CHECK(report.loss == 0);
}

TEST_CASE("covering extreme point rounds up within the additive bound") {
    const NormalizedInstance norm = normalize(example_instance(Sense::Covering));
    const LpSolution sol = solve_lp(naive_relaxation(norm.base));
    REQUIRE(sol.status == LpStatus::Optimal);
    REQUIRE(sol.objective_value == Rational(3, 2));
    REQUIRE(sol.x == RationalVector{Rational(1, 2), 1});
    const auto [rounded, report] = round_extreme_covering(norm, sol);
    CHECK(rounded.x == std::vector<long long>{1, 1});
    CHECK(rounded.value == 2);
    CHECK(rounded.value <= sol.objective_value + report.bound);
    CHECK(is_feasible(norm.base, rounded.x));
}

TEST_CASE("rounding verifies its preconditions") {
    const NormalizedInstance norm = normalize(example_instance(Sense::Covering));
    LpSolution fake;
    fake.status = LpStatus::Optimal;
    fake.x = {Rational(0), Rational(4, 3)};  // exceeds d
    fake.objective_value = Rational(4, 3);
    fake.basis.var_status = {VarStatus::AtLower, VarStatus::Basic};
    CHECK_THROWS_AS(round_extreme_covering(norm, fake), ContractViolation);

    LpSolution not_optimal;
    not_optimal.status = LpStatus::Infeasible;
    CHECK_THROWS_AS(round_extreme_covering(norm, not_optimal), ContractViolation);

    const NormalizedInstance packing = normalize(example_instance());
    CHECK_THROWS_AS(round_extreme_covering(packing, fake), ContractViolation);
}

TEST_CASE("c_max ranges only over items the problem allows") {
    // item with copy bound 0 must not contribute to the bound
    const NormalizedInstance norm =
        normalize(make_instance(Sense::Packing, {{1, 1}}, {1}, {1, 9}, {1, 0}));
    const LpSolution sol = solve_lp(naive_relaxation(norm.base));
    REQUIRE(sol.status == LpStatus::Optimal);
    const auto [rounded, report] = round_extreme_packing(norm, sol);
    CHECK(report.c_max == 1);
}

TEST_CASE("additive guarantee holds exactly across random extreme points") {
    for (unsigned long long seed = 0; seed < 80; ++seed) {
        GenParams params;
        params.k = 1 + (int)(seed % 3);
        params.n = 1 + (int)(seed % 8);
        params.cost_den_max = seed % 3 == 2 ? 2 : 1;
        params.sense = seed % 2 == 0 ? Sense::Packing : Sense::Covering;
        params.tightness = Rational(1 + seed % 3, 4);
        const KnapsackInstance inst = generate_random(params, mix_seed(31, seed));
        const NormalizedInstance norm = normalize(inst);
        const LpSolution sol = solve_lp(naive_relaxation(norm.base));
        if (sol.status != LpStatus::Optimal) continue;
        const auto [rounded, report] = inst.sense == Sense::Packing
                                           ? round_extreme_packing(norm, sol)
                                           : round_extreme_covering(norm, sol);
        CHECK(report.loss <= report.bound);
        CHECK(is_feasible(norm.base, rounded.x));
    }
}
