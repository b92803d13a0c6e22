#include <catch_amalgamated.hpp>

#include "knapgap/generator.hpp"
#include "knapgap/instance_io.hpp"
#include "knapgap/oracle.hpp"

using namespace knapgap;

TEST_CASE("generation is deterministic for a fixed seed") {
    GenParams params;
    params.k = 1;
    params.n = 3;
    const KnapsackInstance a = generate_random(params, 7);
    const KnapsackInstance b = generate_random(params, 7);
    CHECK(a == b);
    CHECK(serialize_instance(a).dump() == serialize_instance(b).dump());
    const KnapsackInstance c = generate_random(params, 8);
    CHECK(!(a == c));
}

TEST_CASE("generated instances validate and are feasible in their sense") {
    for (unsigned long long seed = 0; seed < 50; ++seed) {
        GenParams params;
        params.k = 1 + (int)(seed % 3);
        params.n = 1 + (int)(seed % 6);
        params.cost_den_max = 3;
        params.sense = seed % 2 == 0 ? Sense::Packing : Sense::Covering;
        params.tightness = Rational(seed % 5, 4);
        const KnapsackInstance inst = generate_random(params, seed);
        CHECK_NOTHROW(validate(inst));
        const OracleResult opt = brute_force(inst);
        CHECK(opt.status == OracleStatus::Optimal);  // b is chosen to be satisfiable
    }
}

TEST_CASE("covering demands above total coverage are rejected") {
    GenParams params;
    params.k = 1;
    params.n = 2;
    params.sense = Sense::Covering;
    params.dbound_min = 0;
    params.dbound_max = 0;  // no copies at all
    params.b_range = {{1, 5}};
    CHECK_THROWS_WITH(generate_random(params, 3),
                      Catch::Matchers::ContainsSubstring("infeasible generation"));
}

TEST_CASE("contradictory ranges are rejected") {
    GenParams params;
    params.weight_min = 5;
    params.weight_max = 2;
    CHECK_THROWS_WITH(generate_random(params, 0),
                      Catch::Matchers::ContainsSubstring("impossible parameter combination"));
    GenParams neg;
    neg.cost_min = -3;
    CHECK_THROWS_AS(generate_random(neg, 0), ValidationError);
}

TEST_CASE("packing limits sit between the largest item and the row sum") {
    GenParams params;
    params.k = 2;
    params.n = 5;
    params.weight_min = 1;
    params.tightness = Rational(1, 2);
    const KnapsackInstance inst = generate_random(params, 11);
    for (int j = 0; j < inst.k; ++j) {
        long long row_max = 0, row_sum = 0;
        for (int i = 0; i < inst.n; ++i) {
            row_max = std::max(row_max, inst.A[j][i]);
            row_sum += inst.A[j][i];
        }
        CHECK(inst.b[j] >= row_max);
        CHECK(inst.b[j] <= row_sum);
    }
}
