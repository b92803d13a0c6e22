#ifndef KNAPGAP_REPORT_HPP
#define KNAPGAP_REPORT_HPP

/**
 * Deterministic JSON reports for the command-line tool.
 *
 * Every numeric result is an exact rational rendered as "p/q" (or "p"); no
 * report field ever passes through floating point.  Reports are bit-identical
 * across runs and across serial/parallel execution for the same instance and
 * flags.  Wall-clock timings, which are inherently non-deterministic, are
 * only attached when explicitly requested.
 */

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "knapgap/costfree.hpp"
#include "knapgap/disjunctive.hpp"
#include "knapgap/instance_io.hpp"
#include "knapgap/oracle.hpp"
#include "knapgap/rational.hpp"
#include "knapgap/verify.hpp"

namespace knapgap {

/** FNV-1a over the canonical serialization; stable across platforms. */
inline std::string instance_digest(const KnapsackInstance& inst) {
    const std::string text = serialize_instance(inst).dump();
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return std::string(buf);
}

inline Json rationals_to_json(const RationalVector& xs) {
    Json arr = Json::array();
    for (const Rational& x : xs) arr.push_back(to_string(x));
    return arr;
}

inline Json disjunctive_report(const NormalizedInstance& norm, const DisjunctiveLp& dlp,
                               const DisjunctiveRoundResult& result) {
    Json doc;
    doc["gamma"] = dlp.gamma;
    doc["num_guesses"] = dlp.guesses.size();
    doc["lp_vars"] = dlp.lp.num_vars();
    doc["lp_rows"] = dlp.lp.rows.size();
    doc["lp_value"] = to_string(result.fractional.lp_value);
    doc["active_guess"] = norm.to_original(result.fractional.active_guess.g);
    doc["rounded_value"] = to_string(result.rounded.value);
    doc["fallback_used"] = result.fractional.fallback_used;
    doc["y"] = rationals_to_json(norm.to_original(result.fractional.y));
    doc["solution"] = serialize_solution(norm.to_original(result.rounded));
    return doc;
}

/** Size of the cost-independent hull formulation without materializing it. */
inline std::pair<long long, long long> costfree_lp_size(const NormalizedInstance& inst,
                                                        long long gamma) {
    const int n = inst.base.n;
    long long vars = n;
    long long rows = n + 1;
    TupleEnumerator en(inst, gamma);
    while (auto t = en.next()) {
        vars += n + 1;
        long long member_rows = inst.base.k;  // knapsack rows
        for (int i = 0; i < inst.base.k; ++i) {
            if (t->sizes[i] == gamma && gamma > 0) {
                for (int j = 0; j < n; ++j)
                    if (coeff_precedes(inst.base, i, t->pivots[i], j)) member_rows += 1;
                member_rows += n;  // lower bounds y >= g^i
            } else {
                member_rows += n;  // outright fixing y = g^i
            }
        }
        rows += member_rows + n;  // plus the scaled box upper bounds
    }
    return {vars, rows};
}

inline Json costfree_report(const NormalizedInstance& norm, const CostfreeResult& result) {
    Json doc;
    doc["gamma"] = result.gamma;
    doc["num_tuples"] = result.num_tuples;
    const auto [vars, rows] = costfree_lp_size(norm, result.gamma);
    doc["lp_vars"] = vars;
    doc["lp_rows"] = rows;
    doc["lp_value"] = to_string(result.lp_value);
    Json active = Json::array();
    for (const auto& comp : result.active_tuple.g) active.push_back(norm.to_original(comp));
    doc["active_tuple"] = std::move(active);
    doc["rounded_value"] = to_string(result.solution.value);
    doc["fallback_used"] = result.fallback_used;
    doc["c_independent"] = true;
    doc["solution"] = serialize_solution(norm.to_original(result.solution));
    return doc;
}

struct GapOptions {
    std::vector<long long> gammas;
    unsigned long long budget = kDefaultOracleBudget;
    bool timings = false;
    int threads = 1;
};

/**
 * Exact gap measurements on one instance: the oracle optimum, the naive
 * relaxation, and per gamma the hull LP (value, size, rounding) and the
 * cost-independent LP for packing.  The factor inequalities are asserted on
 * the spot; a budget overrun downgrades the report instead of failing it.
 */
inline Json gap_report(const KnapsackInstance& inst, const GapOptions& opts,
                       bool* budget_exceeded_out = nullptr, bool* violation_out = nullptr) {
    const auto started = std::chrono::steady_clock::now();
    const KnapsackInstance capped = cap_unbounded(inst);
    const NormalizedInstance norm = normalize(capped);

    Json doc;
    doc["instance_digest"] = instance_digest(inst);
    doc["sense"] = to_string(inst.sense);
    doc["k"] = inst.k;
    doc["n"] = inst.n;

    bool budget_exceeded = false;
    std::optional<Rational> opt_ip;
    try {
        const OracleResult oracle = brute_force(capped, opts.budget);
        if (oracle.status == OracleStatus::Optimal) {
            opt_ip = oracle.value;
            doc["opt_ip"] = to_string(oracle.value);
        } else {
            doc["opt_ip"] = nullptr;
            doc["infeasible"] = true;
        }
    } catch (const BudgetExceededError&) {
        budget_exceeded = true;
        doc["opt_ip"] = nullptr;
        doc["opt_ip_unavailable"] = "oracle budget exceeded";
    }

    const LpSolution naive = solve_lp(naive_relaxation(capped));
    doc["naive_lp_value"] =
        naive.status == LpStatus::Optimal ? Json(to_string(naive.objective_value)) : Json();

    bool violated = false;
    Json per_gamma = Json::array();
    for (long long gamma : opts.gammas) {
        Json entry;
        entry["gamma"] = gamma;
        try {
            const DisjunctiveLp dlp = build_disjunctive(norm, gamma);
            const DisjunctiveRoundResult hull = solve_and_round(norm, gamma);
            entry["num_guesses"] = dlp.guesses.size();
            entry["lp_vars"] = dlp.lp.num_vars();
            entry["lp_rows"] = dlp.lp.rows.size();
            entry["hull_value"] = to_string(hull.fractional.lp_value);
            entry["hull_rounded_value"] = to_string(hull.rounded.value);
            entry["fallback_used"] = hull.fractional.fallback_used;
            if (opt_ip.has_value()) {
                const Rational ratio = Rational(capped.k) / gamma;
                const bool ok = capped.sense == Sense::Packing
                                    ? *opt_ip >= (1 - ratio) * hull.fractional.lp_value
                                    : *opt_ip <= (1 + ratio) * hull.fractional.lp_value;
                entry["factor_holds"] = ok;
                violated = violated || !ok;
                entry["ratio_ip_over_hull"] =
                    hull.fractional.lp_value == 0
                        ? Json()
                        : Json(to_string(*opt_ip / hull.fractional.lp_value));
            } else {
                entry["factor_holds"] = nullptr;
            }
        } catch (const InfeasibleError&) {
            entry["infeasible"] = true;
        }
        if (capped.sense == Sense::Packing) {
            const CostfreeResult cf =
                costfree_solve_gamma(norm, gamma, CostfreeOptions{.threads = opts.threads});
            const auto [vars, rows] = costfree_lp_size(norm, gamma);
            entry["costfree_value"] = to_string(cf.lp_value);
            entry["costfree_repaired_value"] = to_string(cf.solution.value);
            entry["costfree_tuples"] = cf.num_tuples;
            entry["costfree_lp_vars"] = vars;
            entry["costfree_lp_rows"] = rows;
            if (opt_ip.has_value()) {
                const bool ok = *opt_ip >= (1 - Rational(capped.k) * capped.k / gamma) * cf.lp_value;
                entry["costfree_factor_holds"] = ok;
                violated = violated || !ok;
            }
        }
        per_gamma.push_back(std::move(entry));
    }
    doc["per_gamma"] = std::move(per_gamma);
    if (opts.timings) {
        const auto elapsed = std::chrono::steady_clock::now() - started;
        doc["elapsed_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    if (budget_exceeded_out != nullptr) *budget_exceeded_out = budget_exceeded;
    if (violation_out != nullptr) *violation_out = violated;
    return doc;
}

}  // namespace knapgap

#endif  // KNAPGAP_REPORT_HPP
