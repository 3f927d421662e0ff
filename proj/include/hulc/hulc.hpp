#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hulc/dataset.hpp"
#include "hulc/estimators.hpp"
#include "hulc/rng.hpp"
#include "hulc/splitmath.hpp"

namespace hulc {

// Balanced random partition of row indices into b_star cells.
struct SplitAssignment {
    int b_star = 0;
    std::vector<int> membership;  // per row, split index in [0, b_star)

    std::vector<std::vector<int>> cells() const;
};

// Per-coordinate closed intervals with provenance.
struct ConfidenceBox {
    std::vector<double> lo, hi;
    std::string method = "hulc";
    double alpha = 0.0;
    double delta_used = 0.0;
    int b_star = 0;
    std::uint64_t seed = 0;
    double budget_u = -1.0;  // the uniform draw that chose B*, -1 if none

    std::optional<double> inflation;   // log(2)/m widening, if applied
    std::optional<double> delta_hat;   // adaptive provenance
    bool delta_clipped = false;

    int dim() const { return static_cast<int>(lo.size()); }
    double width(int k = 0) const { return hi.at(k) - lo.at(k); }
};

struct HulcOptions {
    bool inflate = false;  // opt-in log(2)/m widening (binomial/Poisson)
};

SplitAssignment split_indices(int n, int b, RngStream& rng,
                              int min_split_size = 1);

// Algorithm: solve the split budget (at alpha/d for d > 1), randomize B*
// with one uniform draw, split, estimate per split, return the
// componentwise hull.
ConfidenceBox hulc_interval(const Dataset& data, const EstimatorSpec& est,
                            double alpha, double delta, std::uint64_t seed,
                            const HulcOptions& opts = {});

// Hull of exactly b split estimates; no budget randomization.
ConfidenceBox hulc_interval_fixed_b(const Dataset& data,
                                    const EstimatorSpec& est, int b,
                                    std::uint64_t seed);

}  // namespace hulc
