#ifndef KNAPGAP_ROUNDING_HPP
#define KNAPGAP_ROUNDING_HPP

/**
 * Deterministic rounding of extreme-point relaxation solutions.
 *
 * For a packing relaxation with k rows, flooring an optimal extreme point
 * loses at most k * c_max in value, where c_max ranges over the items the
 * solved problem actually allows (items with copy bound 0 are excluded).
 * For covering the analog takes ceilings and gains at most k * c_max.
 * Both guarantees are asserted exactly on every call; they are contracts,
 * not advice.
 */

#include <utility>
#include <vector>

#include "knapgap/errors.hpp"
#include "knapgap/instance.hpp"
#include "knapgap/lp.hpp"
#include "knapgap/rational.hpp"

namespace knapgap {

/** Component-wise floor; input must be non-negative. */
inline std::vector<long long> round_down(const RationalVector& x) {
    std::vector<long long> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0) throw ContractViolation("round_down: negative coordinate");
        out[i] = floor_int(x[i]).convert_to<long long>();
    }
    return out;
}

/** Component-wise ceiling; input must be non-negative. */
inline std::vector<long long> round_up(const RationalVector& x) {
    std::vector<long long> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0) throw ContractViolation("round_up: negative coordinate");
        out[i] = ceil_int(x[i]).convert_to<long long>();
    }
    return out;
}

struct RoundingReport {
    RationalVector fractional;      // the extreme point that was rounded
    std::vector<long long> rounded;
    Rational loss;                  // |c.x* - c.round(x*)|
    Rational c_max;                 // over items the solved problem allows
    Rational bound;                 // k * c_max
};

/** Largest value among items the problem permits taking at all. */
inline Rational allowed_c_max(const KnapsackInstance& inst) {
    Rational m = 0;
    for (int i = 0; i < inst.n; ++i)
        if ((!inst.d[i].has_value() || *inst.d[i] > 0) && inst.c[i] > m) m = inst.c[i];
    return m;
}

namespace detail {

/** Shared worker: rounds an extreme point of inst's relaxation and asserts
 *  the additive guarantee.  `down` selects floor (packing) vs ceiling. */
inline std::pair<IntegralSolution, RoundingReport> apply_rounding(const KnapsackInstance& inst,
                                                                  const RationalVector& x,
                                                                  bool down) {
    std::vector<long long> z = down ? round_down(x) : round_up(x);
    IntegralSolution sol = make_solution(inst, std::move(z));
    const Rational lp_value = dot(inst.c, x);
    RoundingReport report;
    report.fractional = x;
    report.rounded = sol.x;
    report.loss = down ? lp_value - sol.value : sol.value - lp_value;
    report.c_max = allowed_c_max(inst);
    report.bound = Rational(inst.k) * report.c_max;
    if (report.loss > report.bound)
        throw ContractViolation("rounding: additive guarantee violated (loss " +
                                to_string(report.loss) + " > " + to_string(report.bound) + ")");
    return {std::move(sol), std::move(report)};
}

inline void require_extreme_solution(const KnapsackInstance& inst, const LpSolution& sol) {
    if (sol.status != LpStatus::Optimal)
        throw ContractViolation("rounding: solution is not optimal");
    if (sol.basis.var_status.size() != (std::size_t)inst.n)
        throw ContractViolation("rounding: solution carries no basis certificate");
    if (!check_point(naive_relaxation(inst), sol.x).feasible())
        throw ContractViolation("rounding: point is infeasible for the relaxation");
}

}  // namespace detail

inline std::pair<IntegralSolution, RoundingReport> round_extreme_packing(
    const NormalizedInstance& inst, const LpSolution& sol) {
    if (inst.base.sense != Sense::Packing)
        throw ContractViolation("round_extreme_packing: instance is not packing");
    detail::require_extreme_solution(inst.base, sol);
    return detail::apply_rounding(inst.base, sol.x, /*down=*/true);
}

inline std::pair<IntegralSolution, RoundingReport> round_extreme_covering(
    const NormalizedInstance& inst, const LpSolution& sol) {
    if (inst.base.sense != Sense::Covering)
        throw ContractViolation("round_extreme_covering: instance is not covering");
    detail::require_extreme_solution(inst.base, sol);
    return detail::apply_rounding(inst.base, sol.x, /*down=*/false);
}

}  // namespace knapgap

#endif  // KNAPGAP_ROUNDING_HPP
