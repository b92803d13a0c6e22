#ifndef KNAPGAP_FILTERING_HPP
#define KNAPGAP_FILTERING_HPP

/**
 * Guess enumeration, residual problems, and the guess-and-solve
 * approximation pipeline.
 *
 * A guess is an integral vector g, 0 <= g <= d with at most gamma copies in
 * total, standing for the gamma most profitable items of some solution
 * (items are cost-sorted; among equal costs the later index counts as more
 * profitable).  Packing guesses must fit (Ag <= b); covering guesses are kept
 * only when they are admissible, i.e. A(g + d^g) >= b, so no infeasible
 * residual is ever constructed.
 *
 * Committing to a full guess (|g| = gamma) leaves the residual problem
 * (A, b^g, c, d^g): items above mu(g) = min{i : g_i > 0} are frozen at zero,
 * items up to mu(g) keep d - g, and the right-hand side is reduced by Ag
 * (clamped at zero for covering).  Guesses smaller than gamma stand for
 * complete solutions, so their residual is all-zero.
 */

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "knapgap/errors.hpp"
#include "knapgap/instance.hpp"
#include "knapgap/lp.hpp"
#include "knapgap/parallel.hpp"
#include "knapgap/rational.hpp"
#include "knapgap/rounding.hpp"
#include "knapgap/simplex.hpp"

namespace knapgap {

struct Guess {
    std::vector<long long> g;
    long long size = 0;  // sum of entries
};

struct ResidualProblem {
    std::optional<int> mu;           // min index with g_i > 0; empty when g = 0
    std::vector<CopyBound> d_g;
    std::vector<long long> b_g;
};

struct PtasConfig {
    std::optional<Rational> epsilon;   // > 0
    std::optional<long long> gamma;    // >= 0, takes precedence when set

    /** gamma if given, else ceil(k / epsilon), clamped to at least 1. */
    long long resolve_gamma(int k) const {
        if (gamma.has_value()) {
            if (*gamma < 0) throw ValidationError("gamma: must be non-negative");
            return *gamma;
        }
        if (!epsilon.has_value() || *epsilon <= 0)
            throw ValidationError("epsilon: must be positive (or supply gamma)");
        const Int g = ceil_int(Rational(k) / *epsilon);
        return g < 1 ? 1 : g.convert_to<long long>();
    }
};

inline bool is_valid_guess(const NormalizedInstance& inst, const std::vector<long long>& g,
                           long long gamma) {
    const KnapsackInstance& base = inst.base;
    if ((int)g.size() != base.n) return false;
    long long size = 0;
    for (int i = 0; i < base.n; ++i) {
        if (g[i] < 0) return false;
        if (base.d[i].has_value() && g[i] > *base.d[i]) return false;
        size += g[i];
    }
    return size <= gamma;
}

/** Residual problem for a guess; callers must pass a valid guess. */
inline ResidualProblem residual(const NormalizedInstance& inst, const Guess& guess,
                                long long gamma) {
    const KnapsackInstance& base = inst.base;
    if (!is_valid_guess(inst, guess.g, gamma))
        throw ContractViolation("residual: invalid guess for this instance");
    ResidualProblem res;
    res.d_g.assign(base.n, CopyBound(0));
    res.b_g.assign(base.k, 0);
    long long size = 0;
    for (long long gi : guess.g) size += gi;
    int mu = -1;
    for (int i = 0; i < base.n; ++i)
        if (guess.g[i] > 0) { mu = i; break; }
    if (mu >= 0) res.mu = mu;
    if (size < gamma || mu < 0) return res;  // all-zero residual

    for (int i = 0; i <= mu; ++i) {
        if (base.d[i].has_value())
            res.d_g[i] = *base.d[i] - guess.g[i];
        else
            res.d_g[i] = std::nullopt;  // infinity minus a constant
    }
    for (int j = 0; j < base.k; ++j) {
        long long used = 0;
        for (int i = 0; i < base.n; ++i) used += base.A[j][i] * guess.g[i];
        const long long rest = base.b[j] - used;
        res.b_g[j] = base.sense == Sense::Covering && rest < 0 ? 0 : rest;
    }
    return res;
}

/** The residual viewed as an instance (same item order, same permutation). */
inline NormalizedInstance residual_instance(const NormalizedInstance& inst,
                                            const ResidualProblem& res) {
    NormalizedInstance out = inst;
    out.base.b = res.b_g;
    out.base.d = res.d_g;
    return out;
}

namespace detail {

/** Covering admissibility: A(g + d^g) >= b, with unbounded entries counting
 *  as infinite row mass. */
inline bool covering_admissible(const NormalizedInstance& inst, const Guess& guess,
                                const ResidualProblem& res) {
    const KnapsackInstance& base = inst.base;
    for (int j = 0; j < base.k; ++j) {
        long long mass = 0;
        bool infinite = false;
        for (int i = 0; i < base.n; ++i) {
            if (base.A[j][i] == 0) continue;
            if (!res.d_g[i].has_value()) { infinite = true; break; }
            mass += base.A[j][i] * (guess.g[i] + *res.d_g[i]);
        }
        if (!infinite && mass < base.b[j]) return false;
    }
    return true;
}

}  // namespace detail

/**
 * Lexicographic lazy stream over all guesses of an instance.  The candidate
 * space is never materialized; next() walks an odometer whose digit i is
 * capped at min(d_i, gamma) and whose digit sum is capped at gamma, and
 * filters by the sense condition (fit for packing, admissibility for
 * covering).
 */
class GuessEnumerator {
  public:
    GuessEnumerator(const NormalizedInstance& inst, long long gamma)
        : inst_(inst), gamma_(gamma), current_(inst.base.n, 0) {
        if (gamma < 0) throw ContractViolation("enumerate_guesses: gamma must be non-negative");
        caps_.reserve(inst.base.n);
        for (int i = 0; i < inst.base.n; ++i) {
            const CopyBound& di = inst.base.d[i];
            caps_.push_back(di.has_value() ? std::min<long long>(*di, gamma) : gamma);
        }
    }

    std::optional<Guess> next() {
        while (!done_) {
            std::optional<Guess> out;
            if (accepts(current_, sum_)) out = Guess{current_, sum_};
            advance();
            if (out) return out;
        }
        return std::nullopt;
    }

  private:
    bool accepts(const std::vector<long long>& g, long long size) const {
        Guess guess{g, size};
        if (inst_.base.sense == Sense::Packing) {
            for (int j = 0; j < inst_.base.k; ++j) {
                long long used = 0;
                for (int i = 0; i < inst_.base.n; ++i) used += inst_.base.A[j][i] * g[i];
                if (used > inst_.base.b[j]) return false;
            }
            return true;
        }
        const ResidualProblem res = residual(inst_, guess, gamma_);
        return detail::covering_admissible(inst_, guess, res);
    }

    void advance() {
        int p = inst_.base.n - 1;
        while (p >= 0 && (current_[p] >= caps_[p] || sum_ >= gamma_)) {
            sum_ -= current_[p];
            current_[p] = 0;
            --p;
        }
        if (p < 0) { done_ = true; return; }
        current_[p] += 1;
        sum_ += 1;
    }

    const NormalizedInstance& inst_;
    long long gamma_;
    std::vector<long long> caps_;
    std::vector<long long> current_;
    long long sum_ = 0;
    bool done_ = false;
};

/** Materializes the guess stream; intended for tests and small instances. */
inline std::vector<Guess> enumerate_guesses(const NormalizedInstance& inst, long long gamma) {
    GuessEnumerator en(inst, gamma);
    std::vector<Guess> out;
    while (auto g = en.next()) out.push_back(std::move(*g));
    return out;
}

/** One line of the optional per-guess trace. */
struct GuessTrace {
    Guess guess;
    ResidualProblem res;
    Rational lp_value;
    std::vector<long long> rounded;   // rounded residual part
    Rational candidate_value;
};

struct PtasOptions {
    int threads = 1;
    std::function<void(const GuessTrace&)> trace;  // called in enumeration order
};

struct PtasResult {
    IntegralSolution solution;  // in normalized coordinates
    Guess best_guess;
    unsigned long long num_guesses = 0;
};

/**
 * Solves one residual relaxation per guess, rounds it (down for packing, up
 * for covering), adds the guess back, and keeps the best candidate.  Ties are
 * broken toward the lexicographically smallest guess under any execution
 * order.  Covering instances without an admissible guess are infeasible.
 */
inline PtasResult ptas_solve(const NormalizedInstance& inst, const PtasConfig& cfg,
                             const PtasOptions& opts = {}) {
    const KnapsackInstance& base = inst.base;
    const long long gamma = cfg.resolve_gamma(base.k);
    if (base.sense == Sense::Covering && !all_bounds_finite(base))
        throw ContractViolation("ptas_solve: covering requires finite copy bounds");

    struct Candidate {
        Guess guess;
        GuessTrace trace;
        std::vector<long long> x;
        Rational value;
    };

    GuessEnumerator en(inst, gamma);
    std::optional<Candidate> best;
    unsigned long long count = 0;

    auto work = [&](Guess guess) -> Candidate {
        Candidate cand;
        cand.trace.res = residual(inst, guess, gamma);
        cand.x = guess.g;
        if (guess.size == gamma && guess.size > 0) {
            const NormalizedInstance res_inst = residual_instance(inst, cand.trace.res);
            const LpSolution sol = solve_lp(naive_relaxation(res_inst.base));
            if (sol.status == LpStatus::Unbounded)
                throw UnboundedError("residual relaxation is unbounded");
            if (sol.status != LpStatus::Optimal)
                throw ContractViolation("residual relaxation unexpectedly infeasible");
            auto [rounded, report] =
                detail::apply_rounding(res_inst.base, sol.x, base.sense == Sense::Packing);
            cand.trace.lp_value = sol.objective_value;
            cand.trace.rounded = rounded.x;
            for (int i = 0; i < base.n; ++i) cand.x[i] += rounded.x[i];
        } else {
            cand.trace.rounded.assign(base.n, 0);
        }
        cand.value = solution_value(base, cand.x);
        cand.trace.guess = guess;
        cand.trace.candidate_value = cand.value;
        cand.guess = std::move(guess);
        return cand;
    };
    auto consume = [&](Candidate cand) {
        ++count;
        if (opts.trace) opts.trace(cand.trace);
        const bool better =
            !best.has_value() ||
            (base.sense == Sense::Packing ? cand.value > best->value : cand.value < best->value);
        if (better) best.emplace(std::move(cand));
    };
    ordered_pipeline([&en]() { return en.next(); }, work, consume, opts.threads);

    if (!best.has_value())
        throw InfeasibleError("no admissible guess: instance is infeasible");
    PtasResult result;
    result.solution = make_solution(base, std::move(best->x));
    result.best_guess = std::move(best->guess);
    result.num_guesses = count;
    return result;
}

}  // namespace knapgap

#endif  // KNAPGAP_FILTERING_HPP
