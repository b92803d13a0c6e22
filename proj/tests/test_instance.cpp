#include <catch_amalgamated.hpp>

#include "knapgap/generator.hpp"
#include "knapgap/instance.hpp"
#include "knapgap/instance_io.hpp"
#include "knapgap/oracle.hpp"
#include "support/helpers.hpp"

using namespace knapgap;
using knapgap::testing::make_instance;

TEST_CASE("parse_instance reads the documented format") {
    const KnapsackInstance inst = parse_instance(std::string(
        R"({"sense":"packing","k":1,"n":2,"A":[[2,3]],"b":[4],"c":[1,1],"d":[1,1]})"));
    CHECK(inst.sense == Sense::Packing);
    CHECK(inst.k == 1);
    CHECK(inst.n == 2);
    CHECK(inst.A == std::vector<std::vector<long long>>{{2, 3}});
    CHECK(inst.b == std::vector<long long>{4});
    CHECK(inst.c == RationalVector{1, 1});
    CHECK(inst.d == std::vector<CopyBound>{1, 1});
}

TEST_CASE("parse_instance rejects bad documents with a field path") {
    CHECK_THROWS_WITH(
        parse_instance(std::string(
            R"({"sense":"packing","k":1,"n":2,"A":[[-1,3]],"b":[4],"c":[1,1],"d":[1,1]})")),
        Catch::Matchers::ContainsSubstring("negative weight") &&
            Catch::Matchers::ContainsSubstring("A[0][0]"));
    CHECK_THROWS_AS(parse_instance(std::string("not json")), ValidationError);
    CHECK_THROWS_WITH(
        parse_instance(std::string(
            R"({"sense":"packing","k":2,"n":2,"A":[[1,3]],"b":[4],"c":[1,1],"d":[1,1]})")),
        Catch::Matchers::ContainsSubstring("A: expected 2 rows"));
    CHECK_THROWS_WITH(
        parse_instance(std::string(
            R"({"sense":"packing","k":1,"n":2,"A":[[1,3]],"b":[4],"c":[1,1.5],"d":[1,1]})")),
        Catch::Matchers::ContainsSubstring("c[1]"));
}

TEST_CASE("unbounded copy bounds parse, serialize, and round-trip") {
    const KnapsackInstance inst = parse_instance(std::string(
        R"({"sense":"packing","k":1,"n":2,"A":[[2,3]],"b":[4],"c":["1/2",1],"d":["inf",1]})"));
    CHECK(!inst.d[0].has_value());
    CHECK(inst.c[0] == Rational(1, 2));
    const KnapsackInstance again = parse_instance(serialize_instance(inst).dump());
    CHECK(again == inst);
}

TEST_CASE("serialize then parse is the identity on random instances") {
    for (unsigned long long seed = 0; seed < 30; ++seed) {
        GenParams params;
        params.k = 1 + (int)(seed % 3);
        params.n = 1 + (int)(seed % 5);
        params.cost_den_max = 3;
        params.sense = seed % 2 == 0 ? Sense::Packing : Sense::Covering;
        KnapsackInstance inst = generate_random(params, seed);
        if (seed % 4 == 0 && inst.sense == Sense::Packing && inst.n > 0)
            inst.d[0] = std::nullopt;  // exercise the "inf" marker
        CHECK(parse_instance(serialize_instance(inst).dump()) == inst);
    }
}

TEST_CASE("normalize sorts by cost and keeps ties stable") {
    SECTION("distinct costs") {
        const KnapsackInstance inst =
            make_instance(Sense::Packing, {{1, 2, 3}}, {5}, {3, 1, 2}, {1, 1, 1});
        const NormalizedInstance norm = normalize(inst);
        CHECK(norm.perm == std::vector<int>{1, 2, 0});
        CHECK(norm.base.c == RationalVector{1, 2, 3});
        CHECK(norm.base.A == std::vector<std::vector<long long>>{{2, 3, 1}});
    }
    SECTION("equal costs keep original order") {
        const KnapsackInstance inst = make_instance(Sense::Packing, {{5, 7}}, {9}, {1, 1}, {1, 1});
        const NormalizedInstance norm = normalize(inst);
        CHECK(norm.perm == std::vector<int>{0, 1});
        CHECK(norm.base.A == inst.A);
    }
    SECTION("singleton") {
        const KnapsackInstance inst = make_instance(Sense::Packing, {{5}}, {9}, {5}, {1});
        CHECK(normalize(inst).perm == std::vector<int>{0});
    }
}

TEST_CASE("permutation round-trips solution vectors") {
    const KnapsackInstance inst =
        make_instance(Sense::Packing, {{1, 2, 3}}, {5}, {3, 1, 2}, {2, 3, 4});
    const NormalizedInstance norm = normalize(inst);
    const std::vector<long long> original{7, 8, 9};
    CHECK(norm.to_original(norm.to_normalized(original)) == original);
    CHECK(norm.to_normalized(norm.to_original(original)) == original);
    // feasibility is preserved both ways
    const std::vector<long long> xo{1, 2, 0};
    CHECK(is_feasible(inst, xo) == is_feasible(norm.base, norm.to_normalized(xo)));
}

TEST_CASE("cap_unbounded finitizes copy bounds") {
    SECTION("packing uses the tightest row quotient") {
        const KnapsackInstance inst = make_instance(Sense::Packing, {{2, 3}}, {4}, {1, 1}, {-1, 1});
        const KnapsackInstance capped = cap_unbounded(inst);
        CHECK(capped.d == std::vector<CopyBound>{2, 1});
    }
    SECTION("covering uses the loosest row quotient, rounded up") {
        const KnapsackInstance inst = make_instance(Sense::Covering, {{2}}, {5}, {1}, {-1});
        CHECK(cap_unbounded(inst).d == std::vector<CopyBound>{3});
    }
    SECTION("weightless valuable packing item is unbounded") {
        const KnapsackInstance inst = make_instance(Sense::Packing, {{0}}, {4}, {1}, {-1});
        CHECK_THROWS_AS(cap_unbounded(inst), UnboundedError);
    }
    SECTION("weightless worthless items cap to zero") {
        const KnapsackInstance packing = make_instance(Sense::Packing, {{0}}, {4}, {0}, {-1});
        CHECK(cap_unbounded(packing).d == std::vector<CopyBound>{0});
        const KnapsackInstance covering = make_instance(Sense::Covering, {{0}}, {0}, {1}, {-1});
        CHECK(cap_unbounded(covering).d == std::vector<CopyBound>{0});
    }
}

TEST_CASE("cap_unbounded preserves the exact integer optimum") {
    // Independent check: enumerate up to a generous static box rather than
    // the cap itself.
    for (unsigned long long seed = 0; seed < 40; ++seed) {
        GenParams params;
        params.k = 1 + (int)(seed % 2);
        params.n = 1 + (int)(seed % 3);
        params.weight_min = 1;
        params.weight_max = 4;
        params.cost_max = 5;
        params.dbound_max = 2;
        params.sense = seed % 2 == 0 ? Sense::Packing : Sense::Covering;
        KnapsackInstance inst = generate_random(params, mix_seed(99, seed));
        inst.d[seed % inst.n] = std::nullopt;
        if (inst.sense == Sense::Packing) {
            bool weightless = true;
            for (int j = 0; j < inst.k; ++j) weightless &= inst.A[j][seed % inst.n] == 0;
            if (weightless) continue;
        }

        long long box = 0;
        for (long long bj : inst.b) box = std::max(box, bj);
        KnapsackInstance wide = inst;
        for (auto& di : wide.d)
            if (!di.has_value() || *di > box) di = box;
        const OracleResult before = brute_force(wide, 4'000'000);
        const OracleResult after = brute_force(cap_unbounded(inst), 4'000'000);
        REQUIRE(before.status == after.status);
        if (before.status == OracleStatus::Optimal) CHECK(before.value == after.value);
    }
}

TEST_CASE("n = 0 and k = 0 degenerate instances are accepted") {
    const KnapsackInstance empty = make_instance(Sense::Packing, {}, {}, {}, {});
    CHECK(empty.n == 0);
    CHECK(is_feasible(empty, {}));
    const KnapsackInstance boxonly = make_instance(Sense::Packing, {}, {}, {2, 1}, {1, 2});
    CHECK(boxonly.k == 0);
    CHECK(is_feasible(boxonly, {1, 2}));
}

TEST_CASE("make_solution validates feasibility and value") {
    const KnapsackInstance inst = testing::example_instance();
    const IntegralSolution sol = make_solution(inst, {0, 1});
    CHECK(sol.value == 1);
    CHECK_THROWS_AS(make_solution(inst, {1, 1}), ContractViolation);
    CHECK_THROWS_AS(make_solution(inst, {0, 2}), ContractViolation);
}
