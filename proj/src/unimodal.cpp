#include "hulc/unimodal.hpp"

#include <limits>
#include <stdexcept>

namespace hulc {

ConfidenceBox unimodal_hulc(const Dataset& data, const EstimatorSpec& est,
                            double alpha, double t, double delta,
                            std::uint64_t seed) {
    if (est.dim != 1) {
        throw std::invalid_argument(
            "the unimodal construction is defined for univariate targets");
    }
    UnimodalBudget budget = solve_unimodal_budget(alpha, t, delta);

    // Randomization direction is the reverse of the plain construction:
    // U <= eta picks the larger split count.
    RngStream budget_rng = RngStream::derive(seed, "budget-draw");
    const double u = budget_rng.uniform();
    const int b_star = randomize_unimodal_b(budget, u);

    RngStream shuffle_rng = RngStream::derive(seed, "split-shuffle");
    SplitAssignment splits =
        split_indices(data.n_rows(), b_star, shuffle_rng, est.min_split_size);

    auto cells = splits.cells();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t j = 0; j < cells.size(); ++j) {
        RngStream est_rng = RngStream::derive(seed, "estimator", j);
        double theta = est(data, cells[j], &est_rng)[0];
        lo = std::min(lo, theta);
        hi = std::max(hi, theta);
    }

    const double range = hi - lo;
    ConfidenceBox box;
    box.lo = {lo - t * range};
    box.hi = {hi + t * range};
    box.method = "unimodal";
    box.alpha = alpha;
    box.delta_used = delta;
    box.b_star = b_star;
    box.seed = seed;
    box.budget_u = u;
    return box;
}

}  // namespace hulc
