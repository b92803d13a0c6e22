#ifndef KNAPGAP_INSTANCE_HPP
#define KNAPGAP_INSTANCE_HPP

/**
 * Data model for k-dimensional knapsack instances.
 *
 * An instance is the tuple (A, b, c, d, sense): k non-negative integer weight
 * rows A with limits/demands b, item values/costs c (non-negative rationals),
 * and per-item copy bounds d which may be finite or unbounded.  Packing asks
 * for max cx with Ax <= b, covering for min cx with Ax >= b, both over
 * integral 0 <= x <= d.
 *
 * Instances are immutable after construction; every function here is pure.
 */

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "knapgap/errors.hpp"
#include "knapgap/rational.hpp"

namespace knapgap {

enum class Sense { Packing, Covering };

inline std::string to_string(Sense s) { return s == Sense::Packing ? "packing" : "covering"; }

/** Copy bound: a non-negative count or unbounded.  Unbounded is an explicit
 *  state, never a sentinel number. */
using CopyBound = std::optional<long long>;  // nullopt = +infinity

// Entry limits chosen so that any row activity A_j . x with x <= d fits in
// a signed 64-bit integer without overflow.
inline constexpr long long kMaxWeight = 1'000'000;
inline constexpr long long kMaxLimit = 1'000'000'000;
inline constexpr long long kMaxCopies = 1'000'000;
inline constexpr int kMaxItems = 10'000;
inline constexpr int kMaxRows = 64;

struct KnapsackInstance {
    Sense sense = Sense::Packing;
    int k = 0;  // number of knapsack rows
    int n = 0;  // number of items
    std::vector<std::vector<long long>> A;  // k rows of n non-negative weights
    std::vector<long long> b;               // k limits (packing) / demands (covering)
    RationalVector c;                       // n non-negative values / costs
    std::vector<CopyBound> d;               // n copy bounds

    bool operator==(const KnapsackInstance& o) const {
        return sense == o.sense && k == o.k && n == o.n && A == o.A && b == o.b && c == o.c &&
               d == o.d;
    }
};

/** Throws ValidationError naming the offending field if the instance breaks
 *  any structural invariant (dimensions, signs, entry limits). */
inline void validate(const KnapsackInstance& inst) {
    if (inst.k < 0 || inst.k > kMaxRows) throw ValidationError("k: out of range");
    if (inst.n < 0 || inst.n > kMaxItems) throw ValidationError("n: out of range");
    if ((int)inst.A.size() != inst.k) throw ValidationError("A: expected " + std::to_string(inst.k) + " rows");
    for (int j = 0; j < inst.k; ++j) {
        if ((int)inst.A[j].size() != inst.n)
            throw ValidationError("A[" + std::to_string(j) + "]: expected " + std::to_string(inst.n) + " entries");
        for (int i = 0; i < inst.n; ++i) {
            const long long w = inst.A[j][i];
            if (w < 0)
                throw ValidationError("A[" + std::to_string(j) + "][" + std::to_string(i) + "]: negative weight");
            if (w > kMaxWeight)
                throw ValidationError("A[" + std::to_string(j) + "][" + std::to_string(i) + "]: weight too large");
        }
    }
    if ((int)inst.b.size() != inst.k) throw ValidationError("b: expected " + std::to_string(inst.k) + " entries");
    for (int j = 0; j < inst.k; ++j) {
        if (inst.b[j] < 0) throw ValidationError("b[" + std::to_string(j) + "]: negative limit");
        if (inst.b[j] > kMaxLimit) throw ValidationError("b[" + std::to_string(j) + "]: limit too large");
    }
    if ((int)inst.c.size() != inst.n) throw ValidationError("c: expected " + std::to_string(inst.n) + " entries");
    for (int i = 0; i < inst.n; ++i)
        if (inst.c[i] < 0) throw ValidationError("c[" + std::to_string(i) + "]: negative cost");
    if ((int)inst.d.size() != inst.n) throw ValidationError("d: expected " + std::to_string(inst.n) + " entries");
    for (int i = 0; i < inst.n; ++i) {
        if (inst.d[i].has_value()) {
            if (*inst.d[i] < 0) throw ValidationError("d[" + std::to_string(i) + "]: negative copy bound");
            if (*inst.d[i] > kMaxCopies) throw ValidationError("d[" + std::to_string(i) + "]: copy bound too large");
        }
    }
}

/** An integral solution together with its exact objective value. */
struct IntegralSolution {
    std::vector<long long> x;
    Rational value;  // equals c . x exactly
};

inline Rational solution_value(const KnapsackInstance& inst, const std::vector<long long>& x) {
    Rational v = 0;
    for (int i = 0; i < inst.n; ++i)
        if (x[i] != 0) v += inst.c[i] * x[i];
    return v;
}

/** Exact feasibility in the instance's sense: 0 <= x <= d and Ax <= b
 *  (packing) or Ax >= b (covering). */
inline bool is_feasible(const KnapsackInstance& inst, const std::vector<long long>& x) {
    if ((int)x.size() != inst.n) return false;
    for (int i = 0; i < inst.n; ++i) {
        if (x[i] < 0) return false;
        if (inst.d[i].has_value() && x[i] > *inst.d[i]) return false;
    }
    for (int j = 0; j < inst.k; ++j) {
        long long activity = 0;
        for (int i = 0; i < inst.n; ++i) activity += inst.A[j][i] * x[i];
        if (inst.sense == Sense::Packing ? activity > inst.b[j] : activity < inst.b[j]) return false;
    }
    return true;
}

/** Builds an IntegralSolution, verifying feasibility; the pipelines use this
 *  so that every returned solution is checked rather than trusted. */
inline IntegralSolution make_solution(const KnapsackInstance& inst, std::vector<long long> x) {
    if (!is_feasible(inst, x)) throw ContractViolation("solution is infeasible for the instance");
    Rational v = solution_value(inst, x);
    return IntegralSolution{std::move(x), std::move(v)};
}

/**
 * An instance with items permuted so costs are non-decreasing.
 *
 * perm maps normalized item indices to original ones.  Ties in cost keep the
 * original relative order, so among equal costs the later index counts as
 * more profitable.  Every pipeline consumes NormalizedInstance, which fixes
 * that convention in exactly one place.
 */
struct NormalizedInstance {
    KnapsackInstance base;   // items sorted by cost ascending
    std::vector<int> perm;   // normalized index -> original index

    /** Maps a solution vector in normalized coordinates back to original ones. */
    template <typename T>
    std::vector<T> to_original(const std::vector<T>& xn) const {
        std::vector<T> xo(xn.size());
        for (std::size_t i = 0; i < xn.size(); ++i) xo[perm[i]] = xn[i];
        return xo;
    }

    /** Maps an original-coordinate vector into normalized coordinates. */
    template <typename T>
    std::vector<T> to_normalized(const std::vector<T>& xo) const {
        std::vector<T> xn(xo.size());
        for (std::size_t i = 0; i < xo.size(); ++i) xn[i] = xo[perm[i]];
        return xn;
    }

    IntegralSolution to_original(const IntegralSolution& sol) const {
        return IntegralSolution{to_original(sol.x), sol.value};
    }
};

/** Stable sort of items by cost ascending. */
inline NormalizedInstance normalize(const KnapsackInstance& inst) {
    validate(inst);
    std::vector<int> perm(inst.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return inst.c[a] < inst.c[b]; });
    KnapsackInstance out = inst;
    for (int i = 0; i < inst.n; ++i) {
        out.c[i] = inst.c[perm[i]];
        out.d[i] = inst.d[perm[i]];
        for (int j = 0; j < inst.k; ++j) out.A[j][i] = inst.A[j][perm[i]];
    }
    return NormalizedInstance{std::move(out), std::move(perm)};
}

/**
 * Replaces unbounded copy bounds by finite caps that leave the integer
 * optimum unchanged.
 *
 * Packing: d_i = +inf becomes min over rows j with A_ji > 0 of floor(b_j / A_ji)
 * (no feasible x can exceed that).  Covering: max over rows j with A_ji > 0 of
 * ceil(b_j / A_ji) (at the cap, every row touched by item i is already
 * satisfied by item i alone, and costs are non-negative).  An unbounded item
 * touching no row is an error for packing when it has positive value
 * (unbounded objective) and is capped to 0 otherwise.
 */
inline KnapsackInstance cap_unbounded(const KnapsackInstance& inst) {
    validate(inst);
    KnapsackInstance out = inst;
    for (int i = 0; i < inst.n; ++i) {
        if (inst.d[i].has_value()) continue;
        bool touched = false;
        long long cap = 0;
        for (int j = 0; j < inst.k; ++j) {
            if (inst.A[j][i] <= 0) continue;
            const long long q = inst.sense == Sense::Packing
                                    ? inst.b[j] / inst.A[j][i]
                                    : (inst.b[j] + inst.A[j][i] - 1) / inst.A[j][i];
            cap = touched ? (inst.sense == Sense::Packing ? std::min(cap, q) : std::max(cap, q)) : q;
            touched = true;
        }
        if (!touched) {
            if (inst.sense == Sense::Packing && inst.c[i] > 0)
                throw UnboundedError("unbounded objective: item " + std::to_string(i) +
                                     " has no weight, positive value and no copy bound");
            cap = 0;  // item is useless
        }
        out.d[i] = cap;
    }
    return out;
}

inline bool all_bounds_finite(const KnapsackInstance& inst) {
    for (const CopyBound& di : inst.d)
        if (!di.has_value()) return false;
    return true;
}

}  // namespace knapgap

#endif  // KNAPGAP_INSTANCE_HPP
