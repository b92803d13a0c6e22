#ifndef KNAPGAP_ORACLE_HPP
#define KNAPGAP_ORACLE_HPP

/**
 * Ground-truth exact solvers: exhaustive enumeration over the copy-bound box
 * and a pseudo-polynomial dynamic program over usage vectors.  Both require
 * finite copy bounds (apply cap_unbounded first) and fail loudly when their
 * state budget is exceeded rather than degrading silently.
 */

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "knapgap/errors.hpp"
#include "knapgap/instance.hpp"
#include "knapgap/rational.hpp"

namespace knapgap {

inline constexpr unsigned long long kDefaultOracleBudget = 10'000'000;

enum class OracleStatus { Optimal, Infeasible };

struct OracleResult {
    OracleStatus status = OracleStatus::Infeasible;
    Rational value;               // meaningful when Optimal
    std::vector<long long> x;     // one optimal solution
    unsigned long long states = 0;  // nodes / DP states visited
};

/**
 * Exhaustive search over all integer points of the box [0,d].  Returns the
 * exact optimum with the lexicographically smallest optimal vector.  Budget
 * bounds the box volume prod(d_i + 1).
 */
inline OracleResult brute_force(const KnapsackInstance& inst,
                                unsigned long long budget = kDefaultOracleBudget) {
    validate(inst);
    if (!all_bounds_finite(inst))
        throw ContractViolation("brute_force: copy bounds must be finite (cap_unbounded first)");
    unsigned long long volume = 1;
    for (int i = 0; i < inst.n; ++i) {
        const unsigned long long w = (unsigned long long)(*inst.d[i]) + 1;
        if (volume > budget / w + 1) throw BudgetExceededError("too large for brute force");
        volume *= w;
        if (volume > budget) throw BudgetExceededError("too large for brute force");
    }

    const bool maximize = inst.sense == Sense::Packing;
    std::vector<long long> x(inst.n, 0);
    std::vector<long long> usage(inst.k, 0);
    Rational value = 0;

    OracleResult best;
    best.states = volume;
    auto consider = [&]() {
        bool ok = true;
        for (int j = 0; j < inst.k; ++j) {
            if (maximize ? usage[j] > inst.b[j] : usage[j] < inst.b[j]) { ok = false; break; }
        }
        if (!ok) return;
        // Lexicographic enumeration order: the first optimum seen is the
        // lexicographically smallest, so only strict improvements replace it.
        if (best.status == OracleStatus::Infeasible ||
            (maximize ? value > best.value : value < best.value)) {
            best.status = OracleStatus::Optimal;
            best.value = value;
            best.x = x;
        }
    };

    consider();
    while (true) {
        int p = inst.n - 1;
        // Advance the odometer (last digit fastest = lexicographic order),
        // maintaining usage and value incrementally.
        while (p >= 0 && x[p] == *inst.d[p]) {
            for (int j = 0; j < inst.k; ++j) usage[j] -= inst.A[j][p] * x[p];
            if (inst.c[p] != 0) value -= inst.c[p] * x[p];
            x[p] = 0;
            --p;
        }
        if (p < 0) break;
        x[p] += 1;
        for (int j = 0; j < inst.k; ++j) usage[j] += inst.A[j][p];
        if (inst.c[p] != 0) value += inst.c[p];
        consider();
    }
    return best;
}

namespace detail {

struct DpIndexer {
    std::vector<long long> radix;      // b_j + 1 per row
    std::vector<unsigned long long> stride;
    unsigned long long states = 1;

    explicit DpIndexer(const std::vector<long long>& b, unsigned long long budget) {
        radix.reserve(b.size());
        stride.assign(b.size(), 1);
        for (std::size_t j = 0; j < b.size(); ++j) {
            radix.push_back(b[j] + 1);
            stride[j] = states;
            const unsigned long long w = (unsigned long long)b[j] + 1;
            if (states > budget / w + 1) throw BudgetExceededError("too large for dynamic program");
            states *= w;
            if (states > budget) throw BudgetExceededError("too large for dynamic program");
        }
    }

    unsigned long long flatten(const std::vector<long long>& u) const {
        unsigned long long idx = 0;
        for (std::size_t j = 0; j < u.size(); ++j) idx += stride[j] * (unsigned long long)u[j];
        return idx;
    }

    void unflatten(unsigned long long idx, std::vector<long long>& u) const {
        for (std::size_t j = 0; j < radix.size(); ++j) {
            u[j] = (long long)(idx % (unsigned long long)radix[j]);
            idx /= (unsigned long long)radix[j];
        }
    }
};

}  // namespace detail

/**
 * Dynamic program over k-dimensional usage vectors 0 <= u <= b.
 *
 * Packing: value[i][u] is the best value of items i..n-1 within remaining
 * capacity u.  Covering: value[i][u] is the cheapest way for items i..n-1 to
 * cover remaining demand u, where adding copies clamps at zero (coverage past
 * the demand is equivalent to meeting it).  Budget bounds prod(b_j + 1).
 */
inline OracleResult dp_solve(const KnapsackInstance& inst,
                             unsigned long long budget = kDefaultOracleBudget) {
    validate(inst);
    if (!all_bounds_finite(inst))
        throw ContractViolation("dp_solve: copy bounds must be finite (cap_unbounded first)");
    const detail::DpIndexer ix(inst.b, budget);
    const unsigned long long S = ix.states;
    if (inst.n > 0 && S > 25'000'000ull / (unsigned long long)inst.n)
        throw BudgetExceededError("too large for dynamic program (choice table)");
    const bool maximize = inst.sense == Sense::Packing;

    // reachable[] marks states with a defined value (covering may have none).
    std::vector<Rational> value(S, Rational(0));
    std::vector<uint8_t> reachable(S, 0);
    if (maximize) {
        std::fill(reachable.begin(), reachable.end(), 1);
    } else {
        reachable[0] = 1;  // zero remaining demand costs nothing
    }

    std::vector<std::vector<uint32_t>> choice(inst.n);
    std::vector<Rational> next(S);
    std::vector<uint8_t> next_reach(S);
    std::vector<long long> u(inst.k), v(inst.k);

    for (int i = inst.n - 1; i >= 0; --i) {
        choice[i].assign(S, 0);
        std::fill(next_reach.begin(), next_reach.end(), 0);
        for (unsigned long long s = 0; s < S; ++s) {
            ix.unflatten(s, u);
            bool have = false;
            Rational bestv;
            uint32_t bestt = 0;
            for (long long t = 0; t <= *inst.d[i]; ++t) {
                bool fits = true;
                for (int j = 0; j < inst.k; ++j) {
                    v[j] = u[j] - t * inst.A[j][i];
                    if (maximize) {
                        if (v[j] < 0) { fits = false; break; }
                    } else if (v[j] < 0) {
                        v[j] = 0;  // demand clamp
                    }
                }
                if (!fits) break;  // larger t only overflows further
                const unsigned long long s2 = ix.flatten(v);
                if (!reachable[s2]) continue;
                Rational cand = value[s2];
                if (t != 0 && inst.c[i] != 0) cand += inst.c[i] * t;
                if (!have || (maximize ? cand > bestv : cand < bestv)) {
                    have = true;
                    bestv = cand;
                    bestt = (uint32_t)t;
                }
            }
            next_reach[s] = have ? 1 : 0;
            if (have) { next[s] = std::move(bestv); choice[i][s] = bestt; }
        }
        std::swap(value, next);
        std::swap(reachable, next_reach);
    }

    OracleResult result;
    result.states = S;
    const unsigned long long start = ix.flatten(inst.b);
    if (!reachable[start]) return result;  // covering demand cannot be met
    result.status = OracleStatus::Optimal;
    result.value = value[start];
    result.x.assign(inst.n, 0);
    // Walk the stored choices forward from the start state.
    std::vector<long long> cur(inst.b);
    for (int i = 0; i < inst.n; ++i) {
        const long long t = choice[i][ix.flatten(cur)];
        result.x[i] = t;
        for (int j = 0; j < inst.k; ++j) {
            cur[j] -= t * inst.A[j][i];
            if (!maximize && cur[j] < 0) cur[j] = 0;
        }
    }
    return result;
}

/** Reads the oracle budget override from the environment, if present. */
inline unsigned long long oracle_budget_from_env(const char* var = "KNAPGAP_ORACLE_BUDGET") {
    const char* text = std::getenv(var);
    if (text == nullptr || *text == '\0') return kDefaultOracleBudget;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(text, &end, 10);
    if (end == nullptr || *end != '\0' || parsed == 0)
        throw ValidationError(std::string(var) + ": expected a positive integer");
    return parsed;
}

}  // namespace knapgap

#endif  // KNAPGAP_ORACLE_HPP
