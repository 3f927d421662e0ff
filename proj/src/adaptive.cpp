#include "hulc/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hulc {

int auto_subsample_size(int n) {
    return std::max(1, static_cast<int>(std::floor(std::pow(n, 2.0 / 3.0))));
}

DeltaEstimate estimate_delta(const Dataset& data, const EstimatorSpec& est,
                             int b, int k, std::uint64_t seed) {
    const int n = data.n_rows();
    if (b < est.min_split_size || b >= n) {
        throw std::invalid_argument(
            "subsample size must satisfy min_split_size <= b < n, got b = " +
            std::to_string(b) + ", n = " + std::to_string(n));
    }
    if (k < 1) throw std::invalid_argument("need at least one subsample");

    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    RngStream full_rng = RngStream::derive(seed, "full-estimate");
    auto theta_full = est(data, all, &full_rng);
    const int d = est.dim;

    std::vector<int> pool(all);
    std::vector<int> at_or_below(d, 0);
    for (int j = 0; j < k; ++j) {
        RngStream sub_rng = RngStream::derive(seed, "subsample", j);
        // Partial Fisher-Yates: uniform without replacement.
        for (int i = 0; i < b; ++i) {
            int swap = i + static_cast<int>(sub_rng.integer(n - i));
            std::swap(pool[i], pool[swap]);
        }
        std::vector<int> rows(pool.begin(), pool.begin() + b);
        RngStream est_rng = RngStream::derive(seed, "subsample-est", j);
        std::vector<double> theta_b;
        try {
            theta_b = est(data, rows, &est_rng);
        } catch (const std::exception& e) {
            throw std::runtime_error("estimator failed on subsample " +
                                     std::to_string(j) + ": " + e.what());
        }
        for (int c = 0; c < d; ++c) {
            if (theta_b[c] <= theta_full[c]) ++at_or_below[c];
        }
    }

    DeltaEstimate out;
    out.subsample_size = b;
    out.subsample_count = k;
    out.seed = seed;
    out.per_coordinate.resize(d);
    for (int c = 0; c < d; ++c) {
        double l = static_cast<double>(at_or_below[c]) / k;
        out.per_coordinate[c] = std::fabs(l - 0.5);
        if (c == 0) out.l_n_zero = l;
    }
    out.delta_hat =
        *std::max_element(out.per_coordinate.begin(), out.per_coordinate.end());
    return out;
}

ConfidenceBox adaptive_hulc(const Dataset& data, const EstimatorSpec& est,
                            double alpha, const AdaptiveOptions& opts,
                            std::uint64_t seed) {
    const int n = data.n_rows();
    const int b = opts.subsample_size > 0 ? opts.subsample_size
                                          : auto_subsample_size(n);
    DeltaEstimate de = estimate_delta(data, est,
                                      std::min(b, n - 1), opts.subsamples,
                                      mix64(seed ^ hash_tag("delta")));

    double delta = de.delta_hat;
    bool clipped = false;
    if (delta > opts.delta_cap) {
        if (opts.delta_cap_strict) {
            throw std::runtime_error(
                "estimated median bias " + std::to_string(delta) +
                " exceeds delta-cap " + std::to_string(opts.delta_cap) +
                "; the estimator looks one-sided, consider the unimodal "
                "construction");
        }
        delta = opts.delta_cap;
        clipped = true;
    }

    HulcOptions hopts;
    hopts.inflate = opts.inflate;
    ConfidenceBox box = hulc_interval(data, est, alpha, delta, seed, hopts);
    box.method = "adaptive";
    box.delta_hat = de.delta_hat;
    box.delta_clipped = clipped;
    return box;
}

}  // namespace hulc
