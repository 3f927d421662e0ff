#pragma once

#include <cstdint>

#include "hulc/hulc.hpp"

namespace hulc {

// Stretched-hull interval [min - t*range, max + t*range], valid under an
// asymptotically unimodal limit even at median bias 1/2. Width is exactly
// (1 + 2t) * (max - min). Univariate targets only.
ConfidenceBox unimodal_hulc(const Dataset& data, const EstimatorSpec& est,
                            double alpha, double t, double delta,
                            std::uint64_t seed);

}  // namespace hulc
