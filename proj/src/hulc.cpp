#include "hulc/hulc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hulc {

std::vector<std::vector<int>> SplitAssignment::cells() const {
    std::vector<std::vector<int>> out(b_star);
    for (std::size_t i = 0; i < membership.size(); ++i) {
        out[membership[i]].push_back(static_cast<int>(i));
    }
    return out;
}

SplitAssignment split_indices(int n, int b, RngStream& rng,
                              int min_split_size) {
    if (b < 1) throw std::invalid_argument("split count must be >= 1");
    if (b > n) {
        throw std::invalid_argument("more splits than rows: B* = " +
                                    std::to_string(b) + ", n = " +
                                    std::to_string(n));
    }
    if (n / b < min_split_size) {
        throw std::invalid_argument(
            "splits too small for the estimator: B* = " + std::to_string(b) +
            ", n = " + std::to_string(n) + " gives " + std::to_string(n / b) +
            " rows per split, need " + std::to_string(min_split_size));
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng.engine());

    SplitAssignment a;
    a.b_star = b;
    a.membership.resize(n);
    // Deal shuffled rows round-robin: sizes differ by at most one.
    for (int i = 0; i < n; ++i) a.membership[order[i]] = i % b;
    return a;
}

namespace {

ConfidenceBox hull_of_splits(const Dataset& data, const EstimatorSpec& est,
                             const SplitAssignment& splits,
                             std::uint64_t seed) {
    auto cells = splits.cells();
    const int d = est.dim;
    ConfidenceBox box;
    box.lo.assign(d, std::numeric_limits<double>::infinity());
    box.hi.assign(d, -std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < cells.size(); ++j) {
        RngStream est_rng = RngStream::derive(seed, "estimator", j);
        auto theta = est(data, cells[j], &est_rng);
        if (static_cast<int>(theta.size()) != d) {
            throw std::runtime_error("estimator returned wrong dimension");
        }
        for (int k = 0; k < d; ++k) {
            box.lo[k] = std::min(box.lo[k], theta[k]);
            box.hi[k] = std::max(box.hi[k], theta[k]);
        }
    }
    box.b_star = splits.b_star;
    box.seed = seed;
    return box;
}

void apply_inflation(ConfidenceBox& box, const EstimatorSpec& est, int n) {
    const int m = n / box.b_star;  // smallest split size
    const double pad = std::log(2.0) / m;
    for (int k = 0; k < box.dim(); ++k) {
        box.lo[k] -= pad;
        box.hi[k] += pad;
        if (est.range) {
            box.lo[k] = std::max(box.lo[k], est.range->first);
            box.hi[k] = std::min(box.hi[k], est.range->second);
        }
    }
    box.inflation = pad;
}

}  // namespace

ConfidenceBox hulc_interval(const Dataset& data, const EstimatorSpec& est,
                            double alpha, double delta, std::uint64_t seed,
                            const HulcOptions& opts) {
    const int n = data.n_rows();
    // Per-coordinate level alpha/d with shared splits: union bound.
    SplitBudget budget = solve_budget(alpha / est.dim, delta);

    RngStream budget_rng = RngStream::derive(seed, "budget-draw");
    const double u = budget_rng.uniform();
    const int b_star = randomize_b(budget, u);

    RngStream shuffle_rng = RngStream::derive(seed, "split-shuffle");
    SplitAssignment splits =
        split_indices(n, b_star, shuffle_rng, est.min_split_size);

    ConfidenceBox box = hull_of_splits(data, est, splits, seed);
    box.method = "hulc";
    box.alpha = alpha;
    box.delta_used = delta;
    box.budget_u = u;
    if (opts.inflate) {
        if (!est.supports_log2m_inflation) {
            throw std::invalid_argument("estimator '" + est.name +
                                        "' does not define log(2)/m inflation");
        }
        apply_inflation(box, est, n);
    }
    return box;
}

ConfidenceBox hulc_interval_fixed_b(const Dataset& data,
                                    const EstimatorSpec& est, int b,
                                    std::uint64_t seed) {
    RngStream shuffle_rng = RngStream::derive(seed, "split-shuffle");
    SplitAssignment splits =
        split_indices(data.n_rows(), b, shuffle_rng, est.min_split_size);
    ConfidenceBox box = hull_of_splits(data, est, splits, seed);
    box.method = "hulc-fixed";
    return box;
}

}  // namespace hulc
