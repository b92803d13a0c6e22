#include <algorithm>
#include <set>

#include <catch_amalgamated.hpp>

#include "knapgap/filtering.hpp"
#include "knapgap/generator.hpp"
#include "knapgap/oracle.hpp"
#include "support/helpers.hpp"

using namespace knapgap;
using knapgap::testing::example_instance;
using knapgap::testing::make_instance;

namespace {

std::vector<std::vector<long long>> guess_vectors(const std::vector<Guess>& gs) {
    std::vector<std::vector<long long>> out;
    for (const Guess& g : gs) out.push_back(g.g);
    return out;
}

}  // namespace

TEST_CASE("guess enumeration is exhaustive, ordered, and duplicate-free") {
    const NormalizedInstance unit =
        normalize(make_instance(Sense::Packing, {{1, 1}}, {2}, {1, 1}, {1, 1}));
    CHECK(guess_vectors(enumerate_guesses(unit, 1)) ==
          std::vector<std::vector<long long>>{{0, 0}, {0, 1}, {1, 0}});
    CHECK(guess_vectors(enumerate_guesses(unit, 2)) ==
          std::vector<std::vector<long long>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

    // covering admissibility: only (0,1) works on the running example
    const NormalizedInstance cov = normalize(example_instance(Sense::Covering));
    CHECK(guess_vectors(enumerate_guesses(cov, 1)) ==
          std::vector<std::vector<long long>>{{0, 1}});
}

TEST_CASE("guess count never exceeds (n+1)^gamma") {
    for (unsigned long long seed = 0; seed < 40; ++seed) {
        GenParams params;
        params.k = 1 + (int)(seed % 2);
        params.n = 1 + (int)(seed % 5);
        params.sense = seed % 2 == 0 ? Sense::Packing : Sense::Covering;
        params.dbound_max = 3;
        const NormalizedInstance norm = normalize(generate_random(params, mix_seed(41, seed)));
        for (long long gamma = 0; gamma <= 3; ++gamma) {
            const auto gs = enumerate_guesses(norm, gamma);
            unsigned long long bound = 1;
            for (long long g = 0; g < gamma; ++g) bound *= (unsigned long long)(norm.base.n + 1);
            CHECK(gs.size() <= bound);
            std::set<std::vector<long long>> dedup;
            for (const Guess& g : gs) dedup.insert(g.g);
            CHECK(dedup.size() == gs.size());
            CHECK(std::is_sorted(gs.begin(), gs.end(),
                                 [](const Guess& a, const Guess& b) { return a.g < b.g; }));
        }
    }
}

TEST_CASE("residual construction follows the definitions") {
    const NormalizedInstance norm = normalize(example_instance());
    SECTION("guess (0,1) keeps items up to its first positive index") {
        const ResidualProblem res = residual(norm, Guess{{0, 1}, 1}, 1);
        REQUIRE(res.mu.has_value());
        CHECK(*res.mu == 1);
        CHECK(res.d_g == std::vector<CopyBound>{1, 0});
        CHECK(res.b_g == std::vector<long long>{1});
    }
    SECTION("guess (1,0) freezes everything above index 0") {
        const ResidualProblem res = residual(norm, Guess{{1, 0}, 1}, 1);
        REQUIRE(res.mu.has_value());
        CHECK(*res.mu == 0);
        CHECK(res.d_g == std::vector<CopyBound>{0, 0});
        CHECK(res.b_g == std::vector<long long>{2});
    }
    SECTION("the zero guess gets the all-zero residual") {
        const ResidualProblem res = residual(norm, Guess{{0, 0}, 0}, 1);
        CHECK(!res.mu.has_value());
        CHECK(res.d_g == std::vector<CopyBound>{0, 0});
        CHECK(res.b_g == std::vector<long long>{0});
    }
    SECTION("short guesses get the all-zero residual too") {
        const ResidualProblem res = residual(norm, Guess{{0, 1}, 1}, 2);
        CHECK(res.d_g == std::vector<CopyBound>{0, 0});
        CHECK(res.b_g == std::vector<long long>{0});
    }
    SECTION("invalid guesses are rejected") {
        CHECK_THROWS_AS(residual(norm, Guess{{0, 2}, 2}, 2), ContractViolation);
        CHECK_THROWS_AS(residual(norm, Guess{{1, 1}, 2}, 1), ContractViolation);
    }
}

TEST_CASE("covering residual clamps the right-hand side at zero") {
    const NormalizedInstance norm =
        normalize(make_instance(Sense::Covering, {{5, 1}}, {3}, {1, 2}, {1, 1}));
    const ResidualProblem res = residual(norm, Guess{{1, 0}, 1}, 1);
    CHECK(res.b_g == std::vector<long long>{0});
}

TEST_CASE("gamma can be derived from epsilon") {
    CHECK(PtasConfig{.epsilon = Rational(1, 2)}.resolve_gamma(2) == 4);
    CHECK(PtasConfig{.epsilon = Rational(2, 3)}.resolve_gamma(2) == 3);
    CHECK(PtasConfig{.epsilon = Rational(5)}.resolve_gamma(1) == 1);  // clamped to 1
    CHECK(PtasConfig{.gamma = 0}.resolve_gamma(3) == 0);
    CHECK_THROWS_AS(PtasConfig{}.resolve_gamma(1), ValidationError);
    CHECK_THROWS_AS(PtasConfig{.epsilon = Rational(0)}.resolve_gamma(1), ValidationError);
}

TEST_CASE("items above the first guessed index are frozen in every full residual") {
    const NormalizedInstance norm =
        normalize(make_instance(Sense::Packing, {{1, 1, 1, 1}}, {4}, {1, 2, 3, 4}, {2, 2, 2, 2}));
    for (const Guess& g : enumerate_guesses(norm, 2)) {
        if (g.size < 2) continue;
        const ResidualProblem res = residual(norm, g, 2);
        REQUIRE(res.mu.has_value());
        for (int i = *res.mu + 1; i < norm.base.n; ++i) CHECK(res.d_g[i] == CopyBound(0));
    }
}

TEST_CASE("the guess scheme returns the documented values on the running example") {
    const NormalizedInstance norm = normalize(example_instance());
    const PtasResult g1 = ptas_solve(norm, PtasConfig{.gamma = 1});
    CHECK(g1.solution.value == 1);
    CHECK(g1.num_guesses == 3);

    const PtasResult g2 = ptas_solve(norm, PtasConfig{.gamma = 2});
    CHECK(g2.solution.value == 1);
    // every guess is short at gamma = 2, so the winner is its own candidate
    CHECK(g2.best_guess.g == std::vector<long long>{0, 1});

    const NormalizedInstance cov = normalize(example_instance(Sense::Covering));
    const PtasResult c1 = ptas_solve(cov, PtasConfig{.gamma = 1});
    CHECK(c1.solution.value == 2);
    CHECK(c1.solution.x == std::vector<long long>{1, 1});
}

TEST_CASE("covering without an admissible guess reports infeasibility") {
    const NormalizedInstance norm =
        normalize(make_instance(Sense::Covering, {{1}}, {5}, {1}, {2}));
    CHECK_THROWS_AS(ptas_solve(norm, PtasConfig{.gamma = 2}), InfeasibleError);
}

TEST_CASE("packing accepts unbounded copy bounds") {
    const NormalizedInstance norm =
        normalize(make_instance(Sense::Packing, {{2, 3}}, {6}, {1, 1}, {-1, -1}));
    const PtasResult r = ptas_solve(norm, PtasConfig{.gamma = 1});
    CHECK(r.solution.value == 3);  // three copies of the cheap item
}

TEST_CASE("scheme guarantee holds exactly against the oracle") {
    for (unsigned long long seed = 0; seed < 30; ++seed) {
        GenParams params;
        params.k = 1 + (int)(seed % 3);
        params.n = 2 + (int)(seed % 5);
        params.weight_max = 5;
        params.dbound_max = 2;
        params.sense = seed % 2 == 0 ? Sense::Packing : Sense::Covering;
        params.tightness = Rational(1 + seed % 2, 3);
        const KnapsackInstance inst = generate_random(params, mix_seed(53, seed));
        const NormalizedInstance norm = normalize(inst);
        const OracleResult opt = brute_force(inst);
        for (long long gamma : {1, 2, 3}) {
            PtasResult result;
            try {
                result = ptas_solve(norm, PtasConfig{.gamma = gamma});
            } catch (const InfeasibleError&) {
                CHECK(opt.status == OracleStatus::Infeasible);
                continue;
            }
            REQUIRE(opt.status == OracleStatus::Optimal);
            CHECK(is_feasible(inst, norm.to_original(result.solution).x));
            const Rational ratio = Rational(inst.k) / gamma;
            if (inst.sense == Sense::Packing)
                CHECK(result.solution.value >= (1 - ratio) * opt.value);
            else
                CHECK(result.solution.value <= (1 + ratio) * opt.value);
        }
    }
}

TEST_CASE("serial and concurrent runs produce identical results and traces") {
    for (unsigned long long seed = 0; seed < 8; ++seed) {
        GenParams params;
        params.k = 2;
        params.n = 5;
        params.dbound_max = 2;
        params.cost_den_max = 2;
        const NormalizedInstance norm = normalize(generate_random(params, mix_seed(61, seed)));
        auto run = [&](int threads) {
            std::string log;
            PtasOptions opts;
            opts.threads = threads;
            opts.trace = [&log](const GuessTrace& t) {
                for (long long v : t.guess.g) log += std::to_string(v);
                log += ":" + to_string(t.candidate_value) + ";";
            };
            const PtasResult r = ptas_solve(norm, PtasConfig{.gamma = 2}, opts);
            log += "=" + to_string(r.solution.value);
            for (long long v : r.best_guess.g) log += std::to_string(v);
            return log;
        };
        CHECK(run(1) == run(4));
    }
}
