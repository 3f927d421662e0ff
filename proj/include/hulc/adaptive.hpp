#pragma once

#include <cstdint>
#include <vector>

#include "hulc/hulc.hpp"

namespace hulc {

// Subsampling estimate of the asymptotic median bias, Delta-hat =
// |L_n(0) - 1/2| with L_n(0) the fraction of subsample estimates at or
// below the full-data estimate. No convergence rate enters anywhere.
struct DeltaEstimate {
    double delta_hat = 0.0;               // max over coordinates
    double l_n_zero = 0.0;                // coordinate 0, for provenance
    std::vector<double> per_coordinate;   // |L_k(0) - 1/2| per coordinate
    int subsample_size = 0;
    int subsample_count = 0;
    std::uint64_t seed = 0;
};

DeltaEstimate estimate_delta(const Dataset& data, const EstimatorSpec& est,
                             int b, int k, std::uint64_t seed);

struct AdaptiveOptions {
    int subsample_size = -1;   // -1 = auto: floor(n^(2/3))
    int subsamples = 1000;
    double delta_cap = 0.45;   // Delta-hat near 1/2 makes B undefined
    bool delta_cap_strict = false;  // error instead of clip
    bool inflate = false;
};

int auto_subsample_size(int n);

// Delta-hat from subsampling, clipped at delta_cap, then the plain hull
// construction on the same data.
ConfidenceBox adaptive_hulc(const Dataset& data, const EstimatorSpec& est,
                            double alpha, const AdaptiveOptions& opts,
                            std::uint64_t seed);

}  // namespace hulc
