#ifndef KNAPGAP_TESTS_HELPERS_HPP
#define KNAPGAP_TESTS_HELPERS_HPP

#include <optional>
#include <vector>

#include "knapgap/instance.hpp"
#include "knapgap/rational.hpp"

namespace knapgap::testing {

/** Compact instance builder; d entries of -1 mean unbounded. */
inline KnapsackInstance make_instance(Sense sense, std::vector<std::vector<long long>> A,
                                      std::vector<long long> b, RationalVector c,
                                      std::vector<long long> d) {
    KnapsackInstance inst;
    inst.sense = sense;
    inst.k = (int)A.size();
    inst.n = (int)c.size();
    inst.A = std::move(A);
    inst.b = std::move(b);
    inst.c = std::move(c);
    inst.d.reserve(d.size());
    for (long long di : d) inst.d.push_back(di < 0 ? CopyBound() : CopyBound(di));
    validate(inst);
    return inst;
}

/** The running example used across the suites. */
inline KnapsackInstance example_instance(Sense sense = Sense::Packing) {
    return make_instance(sense, {{2, 3}}, {4}, {1, 1}, {1, 1});
}

}  // namespace knapgap::testing

#endif  // KNAPGAP_TESTS_HELPERS_HPP
