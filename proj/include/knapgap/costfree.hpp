#ifndef KNAPGAP_COSTFREE_HPP
#define KNAPGAP_COSTFREE_HPP

/**
 * Cost-independent extended LP for packing: guess, per constraint, the
 * multiset of the gamma items with the largest coefficients in that
 * constraint, rather than the most profitable items overall.
 *
 * Items are ordered per constraint i by (A_i j, j) lexicographically, the one
 * fixed "consistent way" of breaking coefficient ties.  A full component g^i
 * (gamma copies) pins every item strictly above its pivot nu_i (the smallest
 * item in its support under that order) to exactly its guessed count and
 * lower-bounds every item by its guessed count; a component smaller than
 * gamma stands for the whole solution and pins y = g^i outright.  The
 * resulting constraint system is a pure function of (A, b, d, gamma) and
 * never of c, which only appears in the objective.
 *
 * Extreme points of a tuple polytope have at most k fractional coordinates,
 * so they can be repaired: round fractional coordinates up, and for each
 * violated constraint delete a cheapest multiset of at most k copies that
 * restores it (the union of the per-constraint deletions is removed).  The
 * covering problem has no analog here and is rejected.
 */

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "knapgap/disjunctive.hpp"
#include "knapgap/errors.hpp"
#include "knapgap/filtering.hpp"
#include "knapgap/instance.hpp"
#include "knapgap/lp.hpp"
#include "knapgap/parallel.hpp"
#include "knapgap/rational.hpp"
#include "knapgap/simplex.hpp"

namespace knapgap {

/** Per-constraint item order: j precedes j2 ("j is smaller") iff
 *  (A[i][j], j) < (A[i][j2], j2) lexicographically. */
inline bool coeff_precedes(const KnapsackInstance& inst, int i, int j, int j2) {
    if (inst.A[i][j] != inst.A[i][j2]) return inst.A[i][j] < inst.A[i][j2];
    return j < j2;
}

struct GuessTuple {
    std::vector<std::vector<long long>> g;  // k component vectors of length n
    std::vector<long long> sizes;           // per-component copy counts
    std::vector<int> pivots;                // nu_i for full components, else -1
};

namespace detail {

inline GuessTuple finish_tuple(const KnapsackInstance& base,
                               std::vector<std::vector<long long>> comps, long long gamma) {
    GuessTuple t;
    t.g = std::move(comps);
    t.sizes.resize(base.k);
    t.pivots.assign(base.k, -1);
    for (int i = 0; i < base.k; ++i) {
        long long size = 0;
        for (long long v : t.g[i]) size += v;
        t.sizes[i] = size;
        if (size == gamma && gamma > 0) {
            int pivot = -1;
            for (int j = 0; j < base.n; ++j) {
                if (t.g[i][j] <= 0) continue;
                if (pivot < 0 || coeff_precedes(base, i, j, pivot)) pivot = j;
            }
            t.pivots[i] = pivot;
        }
    }
    return t;
}

}  // namespace detail

/**
 * Lexicographic lazy stream over all k-tuples of guess vectors (entries
 * bounded by d and gamma copies per component).  Only per-component validity
 * is enforced; cross-component inconsistencies surface as empty polytopes and
 * carry no weight in the hull.
 */
class TupleEnumerator {
  public:
    TupleEnumerator(const NormalizedInstance& inst, long long gamma)
        : inst_(inst), gamma_(gamma) {
        if (gamma < 0) throw ContractViolation("enumerate_tuples: gamma must be non-negative");
        if (!all_bounds_finite(inst.base))
            throw ContractViolation("enumerate_tuples: copy bounds must be finite");
        const int k = inst.base.k;
        const int n = inst.base.n;
        comps_.assign(k, std::vector<long long>(n, 0));
        sums_.assign(k, 0);
        caps_.reserve(n);
        for (int j = 0; j < n; ++j) caps_.push_back(std::min<long long>(*inst.base.d[j], gamma));
    }

    std::optional<GuessTuple> next() {
        if (done_) return std::nullopt;
        GuessTuple out = detail::finish_tuple(inst_.base, comps_, gamma_);
        advance();
        return out;
    }

  private:
    void advance() {
        const int k = inst_.base.k;
        const int n = inst_.base.n;
        int p = k * n - 1;
        while (p >= 0) {
            const int i = p / n, j = p % n;
            if (comps_[i][j] < caps_[j] && sums_[i] < gamma_) break;
            sums_[i] -= comps_[i][j];
            comps_[i][j] = 0;
            --p;
        }
        if (p < 0) { done_ = true; return; }
        comps_[p / n][p % n] += 1;
        sums_[p / n] += 1;
    }

    const NormalizedInstance& inst_;
    long long gamma_;
    std::vector<long long> caps_;
    std::vector<std::vector<long long>> comps_;
    std::vector<long long> sums_;
    bool done_ = false;
};

inline std::vector<GuessTuple> enumerate_tuples(const NormalizedInstance& inst, long long gamma) {
    TupleEnumerator en(inst, gamma);
    std::vector<GuessTuple> out;
    while (auto t = en.next()) out.push_back(std::move(*t));
    return out;
}

/**
 * The polytope induced by a tuple, as an LP over y with the instance's
 * objective attached.  Rows: the knapsack rows, then per full component the
 * fixings above the pivot and the lower bounds y >= g^i, and per short
 * component the outright fixing y = g^i.  May be empty; that is allowed.
 */
inline LpProblem tuple_polytope(const NormalizedInstance& inst, const GuessTuple& tuple,
                                long long gamma) {
    const KnapsackInstance& base = inst.base;
    if (base.sense != Sense::Packing)
        throw ContractViolation("tuple_polytope: packing instances only");
    LpProblem p;
    p.sense = ObjSense::Maximize;
    p.objective = base.c;
    p.lower.assign(base.n, Rational(0));
    p.upper.resize(base.n);
    for (int j = 0; j < base.n; ++j) p.upper[j] = Rational(*base.d[j]);
    auto unit_row = [&](int j, Relation rel, long long rhs) {
        LpRow row{RationalVector(base.n, Rational(0)), rel, Rational(rhs)};
        row.coeffs[j] = 1;
        return row;
    };
    for (int i = 0; i < base.k; ++i) {
        LpRow row{RationalVector(base.n, Rational(0)), Relation::LessEq, Rational(base.b[i])};
        for (int j = 0; j < base.n; ++j) row.coeffs[j] = base.A[i][j];
        p.rows.push_back(std::move(row));
    }
    for (int i = 0; i < base.k; ++i) {
        if (tuple.sizes[i] == gamma && gamma > 0) {
            const int pivot = tuple.pivots[i];
            for (int j = 0; j < base.n; ++j)
                if (coeff_precedes(base, i, pivot, j))
                    p.rows.push_back(unit_row(j, Relation::Equal, tuple.g[i][j]));
            for (int j = 0; j < base.n; ++j)
                p.rows.push_back(unit_row(j, Relation::GreaterEq, tuple.g[i][j]));
        } else {
            for (int j = 0; j < base.n; ++j)
                p.rows.push_back(unit_row(j, Relation::Equal, tuple.g[i][j]));
        }
    }
    return p;
}

/** The tuple an integral solution actually induces: per constraint, its
 *  top-gamma multiset under the per-constraint order. */
inline GuessTuple tuple_of_solution(const NormalizedInstance& inst,
                                    const std::vector<long long>& x, long long gamma) {
    const KnapsackInstance& base = inst.base;
    std::vector<int> order(base.n);
    std::vector<std::vector<long long>> comps(base.k, std::vector<long long>(base.n, 0));
    for (int i = 0; i < base.k; ++i) {
        for (int j = 0; j < base.n; ++j) order[j] = j;
        std::sort(order.begin(), order.end(),
                  [&](int a, int bj) { return coeff_precedes(base, i, bj, a); });  // descending
        long long left = gamma;
        for (int j : order) {
            if (left == 0) break;
            const long long take = std::min<long long>(left, x[j]);
            comps[i][j] = take;
            left -= take;
        }
    }
    return detail::finish_tuple(base, std::move(comps), gamma);
}

struct CostfreeLp {
    LpProblem lp;
    unsigned long long num_tuples = 0;
    int n = 0;
    long long gamma = 0;
    // Master y occupies [0, n); block t starts at n + t * (n + 1) holding y^T
    // then lambda^T.
    int yt_index(long long block, int j) const { return n + (int)block * (n + 1) + j; }
    int lambda_index(long long block) const { return n + (int)block * (n + 1) + n; }
    std::vector<GuessTuple> tuples;  // block order
};

/**
 * Hull formulation over all tuple polytopes.  The constraint system depends
 * only on (A, b, d, gamma); the cost vector appears solely in the objective.
 */
inline CostfreeLp build_costfree_lp(const NormalizedInstance& inst, long long gamma) {
    const KnapsackInstance& base = inst.base;
    if (base.sense != Sense::Packing)
        throw ContractViolation("build_costfree_lp: packing instances only");
    if (!all_bounds_finite(base))
        throw ContractViolation("build_costfree_lp: copy bounds must be finite");
    CostfreeLp out;
    out.n = base.n;
    out.gamma = gamma;
    out.tuples = enumerate_tuples(inst, gamma);
    out.num_tuples = out.tuples.size();
    const int n = base.n;
    const long long blocks = (long long)out.tuples.size();
    const int nvars = n + (int)blocks * (n + 1);

    LpProblem& lp = out.lp;
    lp.sense = ObjSense::Maximize;
    lp.objective.assign(nvars, Rational(0));
    for (int j = 0; j < n; ++j) lp.objective[j] = base.c[j];
    lp.lower.assign(nvars, Rational(0));
    lp.upper.assign(nvars, std::nullopt);
    for (long long t = 0; t < blocks; ++t) lp.upper[out.lambda_index(t)] = Rational(1);

    auto blank = [&]() { return RationalVector(nvars, Rational(0)); };
    for (int j = 0; j < n; ++j) {
        LpRow row{blank(), Relation::Equal, 0};
        row.coeffs[j] = 1;
        for (long long t = 0; t < blocks; ++t) row.coeffs[out.yt_index(t, j)] = -1;
        lp.rows.push_back(std::move(row));
    }
    {
        LpRow row{blank(), Relation::Equal, 1};
        for (long long t = 0; t < blocks; ++t) row.coeffs[out.lambda_index(t)] = 1;
        lp.rows.push_back(std::move(row));
    }
    for (long long t = 0; t < blocks; ++t) {
        const LpProblem member = tuple_polytope(inst, out.tuples[t], gamma);
        for (const LpRow& mrow : member.rows) {
            LpRow row{blank(), mrow.rel, 0};
            for (int j = 0; j < n; ++j) row.coeffs[out.yt_index(t, j)] = mrow.coeffs[j];
            if (mrow.rhs != 0) row.coeffs[out.lambda_index(t)] = -mrow.rhs;
            lp.rows.push_back(std::move(row));
        }
        // member box upper bounds, scaled by lambda
        for (int j = 0; j < n; ++j) {
            LpRow row{blank(), Relation::LessEq, 0};
            row.coeffs[out.yt_index(t, j)] = 1;
            if (*base.d[j] != 0) row.coeffs[out.lambda_index(t)] = -*base.d[j];
            lp.rows.push_back(std::move(row));
        }
    }
    return out;
}

/**
 * Ceiling-then-delete repair of an extreme point y of a tuple polytope.
 * For every constraint left violated by the ceiling, the cheapest deletion
 * multiset of at most k copies restoring it is found by exhaustive search
 * (ties: the removal whose sorted index list is lexicographically smallest);
 * the union (component-wise max) of the per-constraint deletions is removed.
 */
inline IntegralSolution repair(const NormalizedInstance& inst, const GuessTuple& tuple,
                               const RationalVector& y, long long gamma) {
    const KnapsackInstance& base = inst.base;
    if ((int)y.size() != base.n) throw ContractViolation("repair: dimension mismatch");
    if ((long long)count_fractional(y) > base.k)
        throw ContractViolation("repair: more than k fractional coordinates");
    if (!check_point(tuple_polytope(inst, tuple, gamma), y).feasible())
        throw ContractViolation("repair: point is not in the tuple polytope");

    const std::vector<long long> ceil = round_up(y);
    std::vector<long long> deletion(base.n, 0);
    for (int i = 0; i < base.k; ++i) {
        long long activity = 0;
        for (int j = 0; j < base.n; ++j) activity += base.A[i][j] * ceil[j];
        if (activity <= base.b[i]) continue;

        // Exhaustive search over deletion multisets D <= ceil, |D| <= k.
        std::vector<long long> dvec(base.n, 0);
        long long dsum = 0;
        std::optional<Rational> best_cost;
        std::vector<long long> best;
        std::vector<int> best_list, list;
        auto removal_list = [&](const std::vector<long long>& D) {
            list.clear();
            for (int j = 0; j < base.n; ++j)
                for (long long t = 0; t < D[j]; ++t) list.push_back(j);
            return list;
        };
        auto consider = [&]() {
            long long removed = 0;
            for (int j = 0; j < base.n; ++j) removed += base.A[i][j] * dvec[j];
            if (activity - removed > base.b[i]) return;
            Rational cost = 0;
            for (int j = 0; j < base.n; ++j)
                if (dvec[j] != 0) cost += base.c[j] * dvec[j];
            if (!best_cost.has_value() || cost < *best_cost) {
                best_cost = cost;
                best = dvec;
                best_list = removal_list(dvec);
            } else if (cost == *best_cost) {
                removal_list(dvec);
                if (std::lexicographical_compare(list.begin(), list.end(), best_list.begin(),
                                                 best_list.end())) {
                    best = dvec;
                    best_list = list;
                }
            }
        };
        consider();
        while (true) {
            int p = base.n - 1;
            while (p >= 0 && (dvec[p] >= std::min<long long>(ceil[p], base.k) || dsum >= base.k)) {
                dsum -= dvec[p];
                dvec[p] = 0;
                --p;
            }
            if (p < 0) break;
            dvec[p] += 1;
            dsum += 1;
            consider();
        }
        if (!best_cost.has_value())
            throw ContractViolation("repair: no deletion multiset of size <= k restores row " +
                                    std::to_string(i));
        for (int j = 0; j < base.n; ++j) deletion[j] = std::max(deletion[j], best[j]);
    }

    std::vector<long long> z(base.n);
    for (int j = 0; j < base.n; ++j) z[j] = ceil[j] - deletion[j];
    IntegralSolution sol = make_solution(base, std::move(z));
    if (gamma > 0) {
        const Rational lp_value = dot(base.c, y);
        if (sol.value < (1 - Rational(base.k) * base.k / gamma) * lp_value)
            throw ContractViolation("repair: value guarantee violated");
    }
    return sol;
}

struct CostfreeResult {
    Rational lp_value;
    IntegralSolution solution;  // normalized coordinates
    GuessTuple active_tuple;
    unsigned long long num_tuples = 0;
    long long gamma = 0;
    bool fallback_used = false;
    bool used_hull = false;
};

namespace detail {

struct TupleOptimum {
    GuessTuple tuple;
    Rational value;
    RationalVector y;
    bool feasible = false;
};

inline TupleOptimum costfree_decompose_best(const NormalizedInstance& inst, long long gamma,
                                            int threads, unsigned long long* count_out) {
    TupleEnumerator en(inst, gamma);
    std::optional<TupleOptimum> best;
    unsigned long long count = 0;
    auto work = [&](GuessTuple tuple) -> TupleOptimum {
        TupleOptimum opt;
        const LpSolution sol = solve_lp(tuple_polytope(inst, tuple, gamma));
        if (sol.status == LpStatus::Optimal) {
            opt.feasible = true;
            opt.value = sol.objective_value;
            opt.y = sol.x;
        }
        opt.tuple = std::move(tuple);
        return opt;
    };
    auto consume = [&](TupleOptimum opt) {
        ++count;
        if (!opt.feasible) return;
        if (!best.has_value() || opt.value > best->value) best.emplace(std::move(opt));
    };
    ordered_pipeline([&en]() { return en.next(); }, work, consume, threads);
    if (count_out != nullptr) *count_out = count;
    if (!best.has_value())
        throw ContractViolation("costfree: no feasible tuple polytope");  // cannot happen: all-zero tuple
    return std::move(*best);
}

}  // namespace detail

struct CostfreeOptions {
    int threads = 1;
    bool use_hull = false;  // solve the single hull LP instead of per-tuple LPs
};

/** Cost-independent pipeline at a given gamma: optimize the hull (or its
 *  per-tuple decomposition, value-equal), then repair the extreme point. */
inline CostfreeResult costfree_solve_gamma(const NormalizedInstance& inst, long long gamma,
                                           const CostfreeOptions& opts = {}) {
    const KnapsackInstance& base = inst.base;
    if (base.sense != Sense::Packing)
        throw ContractViolation("costfree: covering instances are not supported");
    if (!all_bounds_finite(base))
        throw ContractViolation("costfree: copy bounds must be finite (cap_unbounded first)");

    CostfreeResult out;
    out.gamma = gamma;
    detail::TupleOptimum opt;
    if (opts.use_hull) {
        out.used_hull = true;
        const CostfreeLp hull = build_costfree_lp(inst, gamma);
        out.num_tuples = hull.num_tuples;
        const LpSolution sol = solve_lp(hull.lp);
        if (sol.status != LpStatus::Optimal)
            throw ContractViolation("costfree hull LP unexpectedly not optimal");
        long long active = -1;
        bool integral = true;
        for (long long t = 0; t < (long long)hull.tuples.size(); ++t) {
            const Rational& l = sol.x[hull.lambda_index(t)];
            if (l == 1 && active < 0)
                active = t;
            else if (l != 0)
                integral = false;
        }
        if (active >= 0 && integral) {
            opt.feasible = true;
            opt.tuple = hull.tuples[active];
            opt.value = sol.objective_value;
            opt.y.resize(base.n);
            for (int j = 0; j < base.n; ++j) opt.y[j] = sol.x[hull.yt_index(active, j)];
        } else {
            out.fallback_used = true;
            opt = detail::costfree_decompose_best(inst, gamma, opts.threads, nullptr);
            if (opt.value != sol.objective_value)
                throw ContractViolation("costfree hull and decomposition disagree");
        }
    } else {
        opt = detail::costfree_decompose_best(inst, gamma, opts.threads, &out.num_tuples);
    }
    out.lp_value = opt.value;
    out.solution = repair(inst, opt.tuple, opt.y, gamma);
    out.active_tuple = std::move(opt.tuple);
    return out;
}

/** gamma = ceil(k^2 / epsilon), clamped to at least 1. */
inline long long costfree_gamma(int k, const Rational& epsilon) {
    if (epsilon <= 0) throw ValidationError("epsilon: must be positive");
    const Int g = ceil_int(Rational(k) * k / epsilon);
    return g < 1 ? 1 : g.convert_to<long long>();
}

inline CostfreeResult costfree_solve(const NormalizedInstance& inst, const Rational& epsilon,
                                     const CostfreeOptions& opts = {}) {
    return costfree_solve_gamma(inst, costfree_gamma(inst.base.k, epsilon), opts);
}

}  // namespace knapgap

#endif  // KNAPGAP_COSTFREE_HPP
