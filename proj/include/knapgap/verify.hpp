#ifndef KNAPGAP_VERIFY_HPP
#define KNAPGAP_VERIFY_HPP

/**
 * Randomized property suites over exact arithmetic, with counterexample
 * shrinking.
 *
 * Each suite draws deterministic instances from a named distribution and
 * applies an exact check; any violation is shrunk to a smaller instance that
 * still violates the property before being reported.  These suites are the
 * primary acceptance mechanism of the project: every inequality is checked
 * with rationals, never with tolerances.
 */

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "knapgap/costfree.hpp"
#include "knapgap/disjunctive.hpp"
#include "knapgap/errors.hpp"
#include "knapgap/filtering.hpp"
#include "knapgap/generator.hpp"
#include "knapgap/instance.hpp"
#include "knapgap/lp.hpp"
#include "knapgap/oracle.hpp"
#include "knapgap/rounding.hpp"
#include "knapgap/simplex.hpp"

namespace knapgap {

/** A check returns a violation message, or nothing when the property holds. */
using InstanceCheck = std::function<std::optional<std::string>(const KnapsackInstance&)>;

/** Largest gamma in [1, limit] whose guess count stays within cap; keeps the
 *  extended LP at a size the exact solver handles comfortably. */
inline long long pick_gamma(const NormalizedInstance& inst, long long limit,
                            unsigned long long cap) {
    for (long long gamma = limit; gamma > 1; --gamma) {
        GuessEnumerator en(inst, gamma);
        unsigned long long count = 0;
        bool within = true;
        while (en.next()) {
            if (++count > cap) { within = false; break; }
        }
        if (within && count > 0) return gamma;
    }
    return 1;
}

// ---------------------------------------------------------------------------
// Individual exact checks
// ---------------------------------------------------------------------------

/** Optimal extreme points of the naive relaxation have at most k fractional
 *  coordinates. */
inline std::optional<std::string> check_extreme_fractionality(const KnapsackInstance& inst) {
    const LpSolution sol = solve_lp(naive_relaxation(inst));
    if (sol.status != LpStatus::Optimal) return std::nullopt;  // no extreme point to check
    const std::size_t frac = count_fractional(sol.x);
    if ((long long)frac > inst.k)
        return "extreme point has " + std::to_string(frac) + " fractional coordinates, k = " +
               std::to_string(inst.k);
    return std::nullopt;
}

/** Floor (packing) / ceiling (covering) of an optimal extreme point loses at
 *  most k * c_max, exactly. */
inline std::optional<std::string> check_rounding_guarantee(const KnapsackInstance& inst) {
    const NormalizedInstance norm = normalize(inst);
    const LpSolution sol = solve_lp(naive_relaxation(norm.base));
    if (sol.status != LpStatus::Optimal) return std::nullopt;
    try {
        const auto [rounded, report] = inst.sense == Sense::Packing
                                           ? round_extreme_packing(norm, sol)
                                           : round_extreme_covering(norm, sol);
        if (report.loss > report.bound)
            return "additive loss " + to_string(report.loss) + " exceeds " +
                   to_string(report.bound);
    } catch (const ContractViolation& e) {
        return std::string("rounding contract failed: ") + e.what();
    }
    return std::nullopt;
}

/** Guess-and-solve output is feasible and within the multiplicative factor of
 *  the exact optimum, for every gamma in the list. */
inline std::optional<std::string> check_guess_scheme(const KnapsackInstance& inst,
                                                     const std::vector<long long>& gammas,
                                                     unsigned long long budget) {
    const KnapsackInstance capped = cap_unbounded(inst);
    const NormalizedInstance norm = normalize(capped);
    const OracleResult opt = brute_force(capped, budget);
    for (long long gamma : gammas) {
        std::optional<PtasResult> result;
        try {
            result = ptas_solve(norm, PtasConfig{.gamma = gamma});
        } catch (const InfeasibleError&) {
            if (opt.status == OracleStatus::Infeasible) continue;
            return "scheme reported infeasible but the optimum is " + to_string(opt.value);
        }
        if (opt.status == OracleStatus::Infeasible)
            return "scheme returned a solution for an infeasible instance";
        const Rational ratio = Rational(capped.k) / gamma;
        const bool ok = capped.sense == Sense::Packing
                            ? result->solution.value >= (1 - ratio) * opt.value
                            : result->solution.value <= (1 + ratio) * opt.value;
        if (!ok)
            return "gamma " + std::to_string(gamma) + ": scheme value " +
                   to_string(result->solution.value) + " misses optimum " + to_string(opt.value);
    }
    return std::nullopt;
}

struct HullStats {
    long long gamma = 0;
    Rational hull_value;
    Rational decomposition_value;
    Rational rounded_value;
    Rational naive_value;
    std::optional<Rational> opt_ip;
    unsigned long long num_guesses = 0;
    int lp_vars = 0;
    int lp_rows = 0;
    bool fallback_used = false;
};

/**
 * The full extended-LP bundle on one instance: exact equality between the
 * hull optimum and the per-guess decomposition, the variable-count layout
 * formula, the sandwich against the naive relaxation, the rounding guarantee
 * of the hull point, and the integrality-gap inequality against the exact
 * optimum.
 */
inline std::optional<std::string> check_hull_bundle(const KnapsackInstance& inst,
                                                    long long gamma, unsigned long long budget,
                                                    HullStats* stats_out = nullptr) {
    const KnapsackInstance capped = cap_unbounded(inst);
    const NormalizedInstance norm = normalize(capped);
    HullStats stats;
    stats.gamma = gamma;

    std::optional<DisjunctiveRoundResult> hull;
    try {
        const DisjunctiveLp dlp = build_disjunctive(norm, gamma);
        stats.num_guesses = dlp.guesses.size();
        stats.lp_vars = dlp.lp.num_vars();
        stats.lp_rows = (int)dlp.lp.rows.size();
        const long long expect_vars =
            capped.n + (long long)stats.num_guesses * (2 * capped.n + 1);
        if (stats.lp_vars != expect_vars)
            return "variable count " + std::to_string(stats.lp_vars) + " != layout formula " +
                   std::to_string(expect_vars);
        hull = solve_and_round(norm, gamma);
    } catch (const InfeasibleError&) {
        const OracleResult opt = brute_force(capped, budget);
        if (opt.status != OracleStatus::Infeasible)
            return "hull reported infeasible but the optimum is " + to_string(opt.value);
        if (stats_out != nullptr) *stats_out = stats;
        return std::nullopt;
    }
    stats.hull_value = hull->fractional.lp_value;
    stats.rounded_value = hull->rounded.value;
    stats.fallback_used = hull->fractional.fallback_used;

    stats.decomposition_value = value_by_decomposition(norm, gamma);
    if (stats.decomposition_value != stats.hull_value)
        return "hull value " + to_string(stats.hull_value) + " != decomposition value " +
               to_string(stats.decomposition_value);

    const LpSolution naive = solve_lp(naive_relaxation(capped));
    if (naive.status != LpStatus::Optimal) {
        if (capped.sense == Sense::Covering) return std::nullopt;  // nothing feasible at all
        return "naive relaxation not optimal on a packing instance";
    }
    stats.naive_value = naive.objective_value;
    const bool sandwich = capped.sense == Sense::Packing
                              ? stats.hull_value <= stats.naive_value
                              : stats.hull_value >= stats.naive_value;
    if (!sandwich)
        return "hull value " + to_string(stats.hull_value) + " escapes the naive relaxation " +
               to_string(stats.naive_value);

    const OracleResult opt = brute_force(capped, budget);
    if (opt.status == OracleStatus::Infeasible)
        return "hull solved an instance with no integral solution";
    stats.opt_ip = opt.value;
    const Rational ratio = Rational(capped.k) / gamma;
    const bool gap_ok = capped.sense == Sense::Packing
                            ? opt.value >= (1 - ratio) * stats.hull_value
                            : opt.value <= (1 + ratio) * stats.hull_value;
    if (stats_out != nullptr) *stats_out = stats;
    if (!gap_ok)
        return "integer optimum " + to_string(opt.value) + " outside the 1+-k/gamma factor of " +
               to_string(stats.hull_value);
    if (capped.sense == Sense::Packing ? stats.rounded_value < (1 - ratio) * stats.hull_value
                                       : stats.rounded_value > (1 + ratio) * stats.hull_value)
        return "hull rounding missed its factor";
    return std::nullopt;
}

struct CostfreeStats {
    long long gamma = 0;
    unsigned long long num_tuples = 0;
    Rational lp_value;
    Rational repaired_value;
    bool hull_checked = false;
};

/**
 * Cost-independence bundle on one (A, b, d, gamma) configuration: the
 * serialized constraint system must be byte-identical across cost vectors,
 * extreme points of tuple polytopes have at most k fractional coordinates,
 * every exactly-feasible integral point lies in the polytope of exactly one
 * tuple (its own), repair meets the 1 - k^2/gamma factor, and on small
 * configurations the hull optimum equals the decomposition optimum.
 */
inline std::optional<std::string> check_costfree_bundle(const KnapsackInstance& shape,
                                                        long long gamma,
                                                        const std::vector<RationalVector>& costs,
                                                        unsigned long long budget,
                                                        CostfreeStats* stats_out = nullptr) {
    CostfreeStats stats;
    stats.gamma = gamma;
    std::optional<std::string> serialized;
    for (const RationalVector& c : costs) {
        KnapsackInstance inst = shape;
        inst.c = c;
        const NormalizedInstance norm = normalize(inst);
        // The normalization permutation depends on c, so compare the system
        // in original item order: build with the identity permutation.
        NormalizedInstance ident;
        ident.base = inst;
        ident.perm.resize(inst.n);
        for (int i = 0; i < inst.n; ++i) ident.perm[i] = i;
        const CostfreeLp hull_ident = build_costfree_lp(ident, gamma);
        const std::string text = constraint_system_text(hull_ident.lp);
        if (!serialized.has_value())
            serialized = text;
        else if (*serialized != text)
            return "constraint system changed with the cost vector";

        stats.num_tuples = hull_ident.num_tuples;
        const CostfreeResult result = costfree_solve_gamma(norm, gamma);
        stats.lp_value = result.lp_value;
        stats.repaired_value = result.solution.value;
        if (gamma > 0) {
            const Rational factor = 1 - Rational(inst.k) * inst.k / gamma;
            if (result.solution.value < factor * result.lp_value)
                return "repaired value " + to_string(result.solution.value) +
                       " below factor of " + to_string(result.lp_value);
        }
        const OracleResult opt = brute_force(inst, budget);
        if (opt.status != OracleStatus::Optimal) return "packing oracle failed";
        if (opt.value < result.solution.value)
            return "repaired value exceeds the exact optimum";

        // The hull agrees with the decomposition on small configurations.
        if (hull_ident.num_tuples <= 40) {
            stats.hull_checked = true;
            const CostfreeLp hull = build_costfree_lp(norm, gamma);
            const LpSolution hsol = solve_lp(hull.lp);
            if (hsol.status != LpStatus::Optimal) return "hull LP not optimal";
            if (hsol.objective_value != result.lp_value)
                return "hull value " + to_string(hsol.objective_value) +
                       " != decomposition value " + to_string(result.lp_value);
        }
    }

    // Cost-independent scans, once per configuration.
    KnapsackInstance inst = shape;
    inst.c = costs.front();
    NormalizedInstance norm = normalize(inst);
    const std::vector<GuessTuple> tuples = enumerate_tuples(norm, gamma);
    for (const GuessTuple& tuple : tuples) {
        const LpSolution tsol = solve_lp(tuple_polytope(norm, tuple, gamma));
        if (tsol.status != LpStatus::Optimal) continue;
        if ((long long)count_fractional(tsol.x) > inst.k)
            return "tuple polytope extreme point has more than k fractional coordinates";
    }

    // Lifting completeness: every feasible integral point belongs to the
    // polytope of exactly one tuple, namely the one it induces.
    std::vector<long long> x(inst.n, 0);
    std::function<std::optional<std::string>(int)> scan = [&](int i) -> std::optional<std::string> {
        if (i == inst.n) {
            std::vector<long long> xn = norm.to_normalized(x);
            if (!is_feasible(norm.base, xn)) return std::nullopt;
            RationalVector xr(xn.begin(), xn.end());
            int members = 0;
            for (const GuessTuple& tuple : tuples)
                if (check_point(tuple_polytope(norm, tuple, gamma), xr).feasible()) ++members;
            if (members != 1)
                return "feasible point lies in " + std::to_string(members) + " tuple polytopes";
            const GuessTuple own = tuple_of_solution(norm, xn, gamma);
            if (!check_point(tuple_polytope(norm, own, gamma), xr).feasible())
                return "feasible point misses its own tuple polytope";
            return std::nullopt;
        }
        for (long long t = 0; t <= *shape.d[i]; ++t) {
            x[i] = t;
            if (auto err = scan(i + 1)) return err;
        }
        x[i] = 0;
        return std::nullopt;
    };
    if (auto err = scan(0)) return err;

    if (stats_out != nullptr) *stats_out = stats;
    return std::nullopt;
}

/** Dynamic program and exhaustive search agree exactly. */
inline std::optional<std::string> check_oracle_agreement(const KnapsackInstance& inst,
                                                         unsigned long long budget) {
    const KnapsackInstance capped = cap_unbounded(inst);
    const OracleResult bf = brute_force(capped, budget);
    const OracleResult dp = dp_solve(capped, budget);
    if (bf.status != dp.status)
        return "oracle status disagreement";
    if (bf.status != OracleStatus::Optimal) return std::nullopt;
    if (bf.value != dp.value)
        return "brute force " + to_string(bf.value) + " != dynamic program " + to_string(dp.value);
    if (!is_feasible(capped, dp.x) || solution_value(capped, dp.x) != dp.value)
        return "dynamic program returned a bad solution vector";
    if (!is_feasible(capped, bf.x) || solution_value(capped, bf.x) != bf.value)
        return "exhaustive search returned a bad solution vector";
    const LpSolution lp = solve_lp(naive_relaxation(capped));
    if (lp.status == LpStatus::Optimal) {
        const bool ok = capped.sense == Sense::Packing ? bf.value <= lp.objective_value
                                                       : bf.value >= lp.objective_value;
        if (!ok) return "integer optimum escapes the naive relaxation";
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Shrinking
// ---------------------------------------------------------------------------

/** Greedily simplifies a violating instance while the check still fails. */
inline KnapsackInstance shrink_instance(KnapsackInstance inst, const InstanceCheck& violates,
                                        int max_steps = 400) {
    auto still_fails = [&](const KnapsackInstance& cand) {
        try {
            return violates(cand).has_value();
        } catch (const Error&) {
            return false;  // a shrink that breaks preconditions is not a counterexample
        }
    };
    for (int step = 0; step < max_steps; ++step) {
        bool improved = false;
        for (int i = 0; i < inst.n && !improved; ++i) {  // drop an item
            KnapsackInstance cand = inst;
            cand.n -= 1;
            cand.c.erase(cand.c.begin() + i);
            cand.d.erase(cand.d.begin() + i);
            for (auto& row : cand.A) row.erase(row.begin() + i);
            if (still_fails(cand)) { inst = std::move(cand); improved = true; }
        }
        for (int i = 0; i < inst.n && !improved; ++i) {  // lower a copy bound
            if (!inst.d[i].has_value() || *inst.d[i] == 0) continue;
            KnapsackInstance cand = inst;
            cand.d[i] = *cand.d[i] - 1;
            if (still_fails(cand)) { inst = std::move(cand); improved = true; }
        }
        for (int j = 0; j < inst.k && !improved; ++j) {  // lower a limit
            if (inst.b[j] == 0) continue;
            KnapsackInstance cand = inst;
            cand.b[j] -= 1;
            if (still_fails(cand)) { inst = std::move(cand); improved = true; }
        }
        for (int j = 0; j < inst.k * inst.n && !improved; ++j) {  // lower a weight
            KnapsackInstance cand = inst;
            long long& w = cand.A[j / inst.n][j % inst.n];
            if (w == 0) continue;
            w -= 1;
            if (still_fails(cand)) { inst = std::move(cand); improved = true; }
        }
        for (int i = 0; i < inst.n && !improved; ++i) {  // simplify a cost
            KnapsackInstance cand = inst;
            if (!is_integral(cand.c[i]))
                cand.c[i] = floor_rat(cand.c[i]);
            else if (cand.c[i] > 0)
                cand.c[i] -= 1;
            else
                continue;
            if (still_fails(cand)) { inst = std::move(cand); improved = true; }
        }
        if (!improved) break;
    }
    return inst;
}

// ---------------------------------------------------------------------------
// Suite drivers
// ---------------------------------------------------------------------------

struct SuiteOutcome {
    std::string suite;
    int count = 0;
    int violations = 0;
    long long fallbacks = 0;
    std::optional<KnapsackInstance> counterexample;
    std::string first_violation;
};

inline KnapsackInstance suite_instance(const std::string& suite, unsigned long long seed,
                                       int index) {
    GenParams params;
    const unsigned long long s = mix_seed(seed, (unsigned long long)index);
    if (suite == "lemma1" || suite == "corollary2") {
        params.k = 1 + index % 3;
        params.n = 1 + index % 12;
        params.sense = index % 2 == 0 ? Sense::Packing : Sense::Covering;
        params.weight_max = 9;
        params.cost_max = 9;
        params.cost_den_max = index % 4 == 3 ? 3 : 1;
        params.dbound_max = 3;
        params.tightness = Rational(1 + index % 3, 4);
    } else if (suite == "ptas" || suite == "disjunctive-equality") {
        params.k = 1 + index % 3;
        params.n = 2 + index % 7;
        params.sense = Sense::Packing;
        params.weight_max = 5;
        params.cost_max = 9;
        params.cost_den_max = index % 5 == 4 ? 2 : 1;
        params.dbound_max = 3;
        params.tightness = Rational(1 + index % 2, 3);
    } else if (suite == "covering") {
        params.k = 1 + index % 3;
        params.n = 2 + index % 7;
        params.sense = Sense::Covering;
        params.weight_max = 5;
        params.cost_max = 9;
        params.cost_den_max = index % 5 == 4 ? 2 : 1;
        params.dbound_min = index % 3 == 0 ? 0 : 1;
        params.dbound_max = 3;
        params.tightness = Rational(1 + index % 2, 3);
    } else if (suite == "costfree") {
        params.k = 1 + index % 2;
        params.n = 2 + index % 2;
        params.sense = Sense::Packing;
        params.weight_max = 4;
        params.cost_max = 9;
        params.dbound_max = 2;
        params.tightness = Rational(1 + index % 2, 3);
    } else if (suite == "oracle-agreement") {
        params.k = 1 + index % 3;
        params.n = 1 + index % 6;
        params.sense = index % 2 == 0 ? Sense::Packing : Sense::Covering;
        params.weight_max = 6;
        params.cost_max = 9;
        params.cost_den_max = index % 3 == 2 ? 2 : 1;
        params.dbound_max = 3;
        params.tightness = Rational(1 + index % 3, 4);
    } else {
        throw ValidationError("unknown suite: " + suite);
    }
    return generate_random(params, s);
}

/** The per-instance check a suite applies (used both when running the suite
 *  and when shrinking counterexamples). */
inline InstanceCheck suite_check(const std::string& suite, unsigned long long budget,
                                 SuiteOutcome* outcome = nullptr) {
    if (suite == "lemma1") return [](const KnapsackInstance& i) { return check_extreme_fractionality(i); };
    if (suite == "corollary2") return [](const KnapsackInstance& i) { return check_rounding_guarantee(i); };
    if (suite == "ptas" || suite == "covering")
        return [budget](const KnapsackInstance& i) {
            return check_guess_scheme(i, {1, 2, 3, 4}, budget);
        };
    if (suite == "disjunctive-equality")
        return [budget, outcome](const KnapsackInstance& i) {
            const NormalizedInstance norm = normalize(cap_unbounded(i));
            const long long gamma = pick_gamma(norm, 3, 12);
            HullStats stats;
            auto err = check_hull_bundle(i, gamma, budget, &stats);
            if (outcome != nullptr && stats.fallback_used) outcome->fallbacks += 1;
            return err;
        };
    if (suite == "costfree")
        return [budget](const KnapsackInstance& i) {
            std::vector<RationalVector> costs;
            costs.push_back(i.c);
            RationalVector alt = i.c;
            for (std::size_t j = 0; j < alt.size(); ++j) alt[j] = alt[j] * 2 + (long long)(j % 3);
            costs.push_back(alt);
            RationalVector third(i.c.size(), Rational(0));
            for (std::size_t j = 0; j < third.size(); ++j)
                third[j] = Rational((long long)(7 - (long long)(j % 5)), 2);
            costs.push_back(third);
            return check_costfree_bundle(i, 1 + (long long)(i.n % 3), costs, budget);
        };
    if (suite == "oracle-agreement")
        return [budget](const KnapsackInstance& i) { return check_oracle_agreement(i, budget); };
    throw ValidationError("unknown suite: " + suite);
}

inline SuiteOutcome run_suite(const std::string& suite, unsigned long long seed, int count,
                              unsigned long long budget = kDefaultOracleBudget) {
    SuiteOutcome outcome;
    outcome.suite = suite;
    outcome.count = count;
    const InstanceCheck check = suite_check(suite, budget, &outcome);
    for (int index = 0; index < count; ++index) {
        const KnapsackInstance inst = suite_instance(suite, seed, index);
        const auto violation = check(inst);
        if (!violation.has_value()) continue;
        outcome.violations += 1;
        if (!outcome.counterexample.has_value()) {
            outcome.first_violation = *violation;
            outcome.counterexample = shrink_instance(inst, suite_check(suite, budget));
        }
    }
    return outcome;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "lemma1",  "corollary2", "ptas", "disjunctive-equality",
        "covering", "costfree",  "oracle-agreement"};
    return names;
}

}  // namespace knapgap

#endif  // KNAPGAP_VERIFY_HPP
