#ifndef KNAPGAP_GENERATOR_HPP
#define KNAPGAP_GENERATOR_HPP

/**
 * Deterministic random instance generation.
 *
 * Weight, cost and copy-bound entries are drawn uniformly from the given
 * ranges; the right-hand side is derived from a tightness knob so that the
 * result is feasible and non-trivial.  For packing, b_j sits between the
 * largest single-item weight of row j and the row sum; for covering, b_j is a
 * tightness fraction of A_j . d so a feasible solution always exists.  An
 * explicit b range may be supplied instead and is validated.
 *
 * The same seed always yields the same instance: draws go through a fixed
 * 64-bit engine and a modulo reduction, independent of platform.
 */

#include <random>
#include <utility>

#include "knapgap/errors.hpp"
#include "knapgap/instance.hpp"
#include "knapgap/rational.hpp"

namespace knapgap {

/** Derives a per-index seed from a base seed, for instance families. */
inline unsigned long long mix_seed(unsigned long long seed, unsigned long long index) {
    return seed ^ (0x9E3779B97F4A7C15ull * (index + 1));
}

struct GenParams {
    int k = 1;
    int n = 1;
    Sense sense = Sense::Packing;
    long long weight_min = 0, weight_max = 9;
    long long cost_min = 0, cost_max = 9;
    long long cost_den_max = 1;  // denominators drawn from [1, cost_den_max]
    long long dbound_min = 0, dbound_max = 3;
    Rational tightness = Rational(1, 2);  // in [0, 1]
    std::optional<std::pair<long long, long long>> b_range;  // overrides tightness
};

namespace detail {

class Draw {
  public:
    explicit Draw(unsigned long long seed) : engine_(seed) {}

    long long uniform(long long lo, long long hi) {
        // Modulo reduction keeps draws platform-independent; ranges here are
        // tiny relative to 2^64, so the bias is irrelevant for test data.
        return lo + (long long)(engine_() % (unsigned long long)(hi - lo + 1));
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace detail

inline KnapsackInstance generate_random(const GenParams& params, unsigned long long seed) {
    if (params.k < 0 || params.n < 0 || params.weight_min < 0 ||
        params.weight_min > params.weight_max || params.weight_max > kMaxWeight ||
        params.cost_min < 0 || params.cost_min > params.cost_max ||
        params.cost_den_max < 1 || params.dbound_min < 0 ||
        params.dbound_min > params.dbound_max || params.dbound_max > kMaxCopies ||
        params.tightness < 0 || params.tightness > 1)
        throw ValidationError("impossible parameter combination");

    detail::Draw draw(seed);
    KnapsackInstance inst;
    inst.sense = params.sense;
    inst.k = params.k;
    inst.n = params.n;
    inst.A.assign(params.k, std::vector<long long>(params.n, 0));
    for (int j = 0; j < params.k; ++j)
        for (int i = 0; i < params.n; ++i)
            inst.A[j][i] = draw.uniform(params.weight_min, params.weight_max);
    inst.c.reserve(params.n);
    for (int i = 0; i < params.n; ++i) {
        const long long num = draw.uniform(params.cost_min, params.cost_max);
        const long long den =
            params.cost_den_max == 1 ? 1 : draw.uniform(1, params.cost_den_max);
        inst.c.push_back(Rational(num, den));
    }
    inst.d.reserve(params.n);
    for (int i = 0; i < params.n; ++i)
        inst.d.push_back(draw.uniform(params.dbound_min, params.dbound_max));

    inst.b.assign(params.k, 0);
    for (int j = 0; j < params.k; ++j) {
        long long row_sum = 0, row_max = 0, covered = 0;
        for (int i = 0; i < params.n; ++i) {
            row_sum += inst.A[j][i];
            row_max = std::max(row_max, inst.A[j][i]);
            covered += inst.A[j][i] * *inst.d[i];
        }
        if (params.b_range.has_value()) {
            const auto [lo, hi] = *params.b_range;
            if (lo < 0 || lo > hi) throw ValidationError("impossible parameter combination");
            inst.b[j] = draw.uniform(lo, hi);
            if (inst.sense == Sense::Covering && inst.b[j] > covered)
                throw ValidationError("infeasible generation: demand b[" + std::to_string(j) +
                                      "] exceeds what all copies can cover");
        } else if (inst.sense == Sense::Packing) {
            inst.b[j] =
                row_max + floor_int(params.tightness * (row_sum - row_max)).convert_to<long long>();
        } else {
            inst.b[j] = ceil_int(params.tightness * covered).convert_to<long long>();
        }
    }
    validate(inst);
    return inst;
}

}  // namespace knapgap

#endif  // KNAPGAP_GENERATOR_HPP
