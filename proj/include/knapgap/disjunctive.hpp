#ifndef KNAPGAP_DISJUNCTIVE_HPP
#define KNAPGAP_DISJUNCTIVE_HPP

/**
 * The single extended LP over all guesses: the convex hull of the union of
 * the shifted residual polyhedra, written with convex-combination weights.
 *
 * Variables: master y (length n), then per guess g a block (x^g, y^g,
 * lambda^g).  Rows: y = sum_g y^g; sum_g lambda^g = 1; per guess the linking
 * equations y^g = x^g + lambda^g g, the scaled box x^g <= lambda^g d^g, and
 * the scaled knapsack rows A x^g <= lambda^g b^g (>= for covering).  Only y
 * carries objective coefficients.
 *
 * At an extreme point exactly one lambda^g equals 1; the active block then
 * is an extreme point of that guess's residual relaxation and y decomposes
 * as x^{g*} + g*.  That integrality is checked on every solve rather than
 * assumed: if it ever fails, the solver falls back to optimizing each
 * guess's shifted LP separately (value-equivalent by construction) and the
 * event is flagged in the result.
 */

#include <optional>
#include <utility>
#include <vector>

#include "knapgap/errors.hpp"
#include "knapgap/filtering.hpp"
#include "knapgap/instance.hpp"
#include "knapgap/lp.hpp"
#include "knapgap/parallel.hpp"
#include "knapgap/rational.hpp"
#include "knapgap/rounding.hpp"
#include "knapgap/simplex.hpp"

namespace knapgap {

struct DisjunctiveLp {
    LpProblem lp;
    std::vector<Guess> guesses;  // enumeration order = block order
    std::vector<ResidualProblem> residuals;
    int n = 0;
    int k = 0;
    long long gamma = 0;

    // Block layout: y occupies [0, n); block i starts at n + i * (2n + 1)
    // holding x^g, then y^g, then lambda^g.
    int x_index(int block, int j) const { return n + block * (2 * n + 1) + j; }
    int yg_index(int block, int j) const { return n + block * (2 * n + 1) + n + j; }
    int lambda_index(int block) const { return n + block * (2 * n + 1) + 2 * n; }
};

inline DisjunctiveLp build_disjunctive(const NormalizedInstance& inst, long long gamma) {
    const KnapsackInstance& base = inst.base;
    if (!all_bounds_finite(base))
        throw ContractViolation("build_disjunctive: copy bounds must be finite (cap_unbounded first)");
    DisjunctiveLp out;
    out.n = base.n;
    out.k = base.k;
    out.gamma = gamma;
    out.guesses = enumerate_guesses(inst, gamma);
    if (out.guesses.empty())
        throw InfeasibleError("no admissible guess: instance is infeasible");
    for (const Guess& g : out.guesses) out.residuals.push_back(residual(inst, g, gamma));

    const int n = base.n;
    const int blocks = (int)out.guesses.size();
    const int nvars = n + blocks * (2 * n + 1);
    LpProblem& lp = out.lp;
    lp.sense = base.sense == Sense::Packing ? ObjSense::Maximize : ObjSense::Minimize;
    lp.objective.assign(nvars, Rational(0));
    for (int j = 0; j < n; ++j) lp.objective[j] = base.c[j];
    lp.lower.assign(nvars, Rational(0));
    lp.upper.assign(nvars, std::nullopt);
    for (int i = 0; i < blocks; ++i) lp.upper[out.lambda_index(i)] = Rational(1);

    auto blank = [&]() { return RationalVector(nvars, Rational(0)); };

    // y_j = sum over blocks of y^g_j
    for (int j = 0; j < n; ++j) {
        LpRow row{blank(), Relation::Equal, 0};
        row.coeffs[j] = 1;
        for (int i = 0; i < blocks; ++i) row.coeffs[out.yg_index(i, j)] = -1;
        lp.rows.push_back(std::move(row));
    }
    // sum of lambda = 1
    {
        LpRow row{blank(), Relation::Equal, 1};
        for (int i = 0; i < blocks; ++i) row.coeffs[out.lambda_index(i)] = 1;
        lp.rows.push_back(std::move(row));
    }
    const Relation knap_rel =
        base.sense == Sense::Packing ? Relation::LessEq : Relation::GreaterEq;
    for (int i = 0; i < blocks; ++i) {
        const Guess& g = out.guesses[i];
        const ResidualProblem& res = out.residuals[i];
        // y^g_j - x^g_j - g_j lambda = 0
        for (int j = 0; j < n; ++j) {
            LpRow row{blank(), Relation::Equal, 0};
            row.coeffs[out.yg_index(i, j)] = 1;
            row.coeffs[out.x_index(i, j)] = -1;
            if (g.g[j] != 0) row.coeffs[out.lambda_index(i)] = -g.g[j];
            lp.rows.push_back(std::move(row));
        }
        // x^g_j <= d^g_j lambda
        for (int j = 0; j < n; ++j) {
            LpRow row{blank(), Relation::LessEq, 0};
            row.coeffs[out.x_index(i, j)] = 1;
            if (*res.d_g[j] != 0) row.coeffs[out.lambda_index(i)] = -*res.d_g[j];
            lp.rows.push_back(std::move(row));
        }
        // A x^g <= b^g lambda (or >= for covering)
        for (int r = 0; r < base.k; ++r) {
            LpRow row{blank(), knap_rel, 0};
            for (int j = 0; j < n; ++j)
                if (base.A[r][j] != 0) row.coeffs[out.x_index(i, j)] = base.A[r][j];
            if (res.b_g[r] != 0) row.coeffs[out.lambda_index(i)] = -res.b_g[r];
            lp.rows.push_back(std::move(row));
        }
    }
    return out;
}

struct DisjunctiveSolution {
    Rational lp_value;
    RationalVector y;         // master point
    Guess active_guess;
    RationalVector x_active;  // extreme point of the active residual relaxation
    RationalVector lambda;
    bool fallback_used = false;
};

namespace detail {

struct GuessOptimum {
    Guess guess;
    Rational value;          // c.g + residual optimum
    RationalVector x_res;    // empty for short guesses
};

/** Best guess by solving each residual relaxation separately; ties go to the
 *  earliest guess in enumeration order. */
inline GuessOptimum decompose_best(const NormalizedInstance& inst, long long gamma,
                                   int threads = 1, unsigned long long* count_out = nullptr) {
    const KnapsackInstance& base = inst.base;
    if (!all_bounds_finite(base))
        throw ContractViolation("decomposition: copy bounds must be finite (cap_unbounded first)");
    GuessEnumerator en(inst, gamma);
    std::optional<GuessOptimum> best;
    unsigned long long count = 0;
    auto work = [&](Guess guess) -> GuessOptimum {
        GuessOptimum opt;
        opt.value = 0;
        for (int i = 0; i < base.n; ++i)
            if (guess.g[i] != 0) opt.value += base.c[i] * guess.g[i];
        if (guess.size == gamma && guess.size > 0) {
            const NormalizedInstance res_inst =
                residual_instance(inst, residual(inst, guess, gamma));
            const LpSolution sol = solve_lp(naive_relaxation(res_inst.base));
            if (sol.status != LpStatus::Optimal)
                throw ContractViolation("residual relaxation unexpectedly not optimal");
            opt.value += sol.objective_value;
            opt.x_res = sol.x;
        }
        opt.guess = std::move(guess);
        return opt;
    };
    auto consume = [&](GuessOptimum opt) {
        ++count;
        const bool better = !best.has_value() || (base.sense == Sense::Packing
                                                      ? opt.value > best->value
                                                      : opt.value < best->value);
        if (better) best.emplace(std::move(opt));
    };
    ordered_pipeline([&en]() { return en.next(); }, work, consume, threads);
    if (count_out != nullptr) *count_out = count;
    if (!best.has_value())
        throw InfeasibleError("no admissible guess: instance is infeasible");
    return std::move(*best);
}

}  // namespace detail

/** Optimum over guesses of c.g plus the residual optimum; exactly the value
 *  of the extended LP, computed without ever building it. */
inline Rational value_by_decomposition(const NormalizedInstance& inst, long long gamma,
                                       int threads = 1) {
    return detail::decompose_best(inst, gamma, threads).value;
}

struct DisjunctiveRoundResult {
    DisjunctiveSolution fractional;
    IntegralSolution rounded;  // normalized coordinates
};

/**
 * Solves the extended LP to an extreme point, extracts the active guess, and
 * rounds the residual part (down for packing, up for covering).  A guess
 * smaller than gamma already carries an integral y, which is returned as-is.
 */
inline DisjunctiveRoundResult solve_and_round(const NormalizedInstance& inst, long long gamma) {
    const KnapsackInstance& base = inst.base;
    const DisjunctiveLp dlp = build_disjunctive(inst, gamma);
    const LpSolution sol = solve_lp(dlp.lp);
    if (sol.status != LpStatus::Optimal)
        throw ContractViolation("extended LP unexpectedly not optimal");

    DisjunctiveSolution frac;
    frac.lp_value = sol.objective_value;
    frac.y.assign(sol.x.begin(), sol.x.begin() + dlp.n);
    frac.lambda.resize(dlp.guesses.size());
    int active = -1;
    bool integral = true;
    for (std::size_t i = 0; i < dlp.guesses.size(); ++i) {
        frac.lambda[i] = sol.x[dlp.lambda_index((int)i)];
        if (frac.lambda[i] == 1 && active < 0)
            active = (int)i;
        else if (frac.lambda[i] != 0)
            integral = false;
    }
    if (active < 0) integral = false;

    if (integral) {
        frac.active_guess = dlp.guesses[active];
        frac.x_active.resize(dlp.n);
        for (int j = 0; j < dlp.n; ++j) frac.x_active[j] = sol.x[dlp.x_index(active, j)];
        for (int j = 0; j < dlp.n; ++j)
            if (frac.y[j] != frac.x_active[j] + frac.active_guess.g[j])
                throw ContractViolation("extended LP: master point does not decompose");
    } else {
        // Extreme-point integrality of lambda failed; recover a
        // value-equivalent optimum from the per-guess decomposition.
        frac.fallback_used = true;
        detail::GuessOptimum opt = detail::decompose_best(inst, gamma);
        if (opt.value != frac.lp_value)
            throw ContractViolation("extended LP and decomposition disagree");
        frac.active_guess = std::move(opt.guess);
        frac.x_active = std::move(opt.x_res);
        if (frac.x_active.empty()) frac.x_active.assign(dlp.n, Rational(0));
        frac.y.resize(dlp.n);
        for (int j = 0; j < dlp.n; ++j)
            frac.y[j] = frac.x_active[j] + frac.active_guess.g[j];
    }

    DisjunctiveRoundResult out;
    if (frac.active_guess.size < gamma || gamma == 0) {
        // y is integral here: the whole solution was guessed.
        std::vector<long long> z(dlp.n);
        for (int j = 0; j < dlp.n; ++j) {
            if (!is_integral(frac.y[j]))
                throw ContractViolation("extended LP: short guess with fractional master point");
            z[j] = numerator(frac.y[j]).convert_to<long long>();
        }
        out.rounded = make_solution(base, std::move(z));
    } else {
        const int idx = [&]() {
            for (std::size_t i = 0; i < dlp.guesses.size(); ++i)
                if (dlp.guesses[i].g == frac.active_guess.g) return (int)i;
            throw ContractViolation("active guess not found");
        }();
        const NormalizedInstance res_inst = residual_instance(inst, dlp.residuals[idx]);
        auto [rounded, report] = detail::apply_rounding(res_inst.base, frac.x_active,
                                                        base.sense == Sense::Packing);
        std::vector<long long> z(dlp.n);
        for (int j = 0; j < dlp.n; ++j) z[j] = frac.active_guess.g[j] + rounded.x[j];
        out.rounded = make_solution(base, std::move(z));
        const Rational ratio = Rational(base.k) / gamma;
        const Rational value = dot(base.c, frac.y);
        const bool ok = base.sense == Sense::Packing
                            ? out.rounded.value >= (1 - ratio) * value
                            : out.rounded.value <= (1 + ratio) * value;
        if (!ok) throw ContractViolation("extended LP rounding guarantee violated");
    }
    out.fractional = std::move(frac);
    return out;
}

/**
 * Exact membership in the projection of the extended LP onto the original
 * variables, decided by a feasibility solve with y pinned to the point.
 */
inline bool check_membership(const NormalizedInstance& inst, long long gamma,
                             const RationalVector& point) {
    if ((int)point.size() != inst.base.n)
        throw ContractViolation("check_membership: dimension mismatch");
    DisjunctiveLp dlp;
    try {
        dlp = build_disjunctive(inst, gamma);
    } catch (const InfeasibleError&) {
        return false;  // empty hull contains nothing
    }
    LpProblem feas = dlp.lp;
    feas.objective.assign(feas.objective.size(), Rational(0));
    for (int j = 0; j < dlp.n; ++j) {
        LpRow row{RationalVector(feas.num_vars(), Rational(0)), Relation::Equal, point[j]};
        row.coeffs[j] = 1;
        feas.rows.push_back(std::move(row));
    }
    return solve_lp(feas).status == LpStatus::Optimal;
}

}  // namespace knapgap

#endif  // KNAPGAP_DISJUNCTIVE_HPP
