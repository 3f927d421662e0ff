#include "hulc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hulc/stats.hpp"

namespace hulc {

namespace {

std::vector<double> gather(const Dataset& data, int col,
                           std::span<const int> rows) {
    const auto& c = data.column(col);
    std::vector<double> out;
    out.reserve(rows.size());
    for (int i : rows) out.push_back(c.at(i));
    return out;
}

void require_nonempty(std::span<const int> rows) {
    if (rows.empty()) throw std::invalid_argument("empty data slice");
}

}  // namespace

EstimatorSpec mean_estimator() {
    EstimatorSpec spec;
    spec.name = "mean";
    spec.recommended_delta = 0.0;
    spec.procedure = [](const Dataset& data, std::span<const int> rows,
                        RngStream*) -> std::vector<double> {
        require_nonempty(rows);
        auto v = gather(data, data.sample_col, rows);
        return {vec_mean(v)};
    };
    return spec;
}

EstimatorSpec median_estimator(bool randomized) {
    EstimatorSpec spec;
    spec.name = randomized ? "median" : "median-lower";
    spec.recommended_delta = 0.0;
    spec.needs_randomness = randomized;
    spec.procedure = [randomized](const Dataset& data, std::span<const int> rows,
                                  RngStream* rng) -> std::vector<double> {
        require_nonempty(rows);
        auto v = gather(data, data.sample_col, rows);
        const std::size_t n = v.size();
        std::nth_element(v.begin(), v.begin() + (n - 1) / 2, v.end());
        double lower_mid = v[(n - 1) / 2];
        if (n % 2 == 1) return {lower_mid};
        if (!randomized) return {lower_mid};  // documented non-unbiased fallback
        if (rng == nullptr) {
            throw std::invalid_argument("randomized median needs an RNG stream");
        }
        std::nth_element(v.begin(), v.begin() + n / 2, v.end());
        double upper_mid = v[n / 2];
        // Fair coin between the two central order statistics.
        return {rng->bernoulli(0.5) ? lower_mid : upper_mid};
    };
    return spec;
}

EstimatorSpec binomial_proportion() {
    EstimatorSpec spec;
    spec.name = "binom";
    spec.recommended_delta = 0.25;
    spec.supports_log2m_inflation = true;
    spec.range = {{0.0, 1.0}};
    spec.procedure = [](const Dataset& data, std::span<const int> rows,
                        RngStream*) -> std::vector<double> {
        require_nonempty(rows);
        const auto& c = data.column(data.sample_col);
        double sum = 0.0;
        for (int i : rows) {
            double v = c.at(i);
            if (v != 0.0 && v != 1.0) {
                throw std::invalid_argument(
                    "binomial proportion needs 0/1 values");
            }
            sum += v;
        }
        return {sum / static_cast<double>(rows.size())};
    };
    return spec;
}

EstimatorSpec ols_estimator(int target_coefficient, bool intercept) {
    EstimatorSpec spec;
    spec.name = "ols:" + std::to_string(target_coefficient);
    spec.recommended_delta = 0.0;
    spec.min_split_size = 2;
    spec.procedure = [target_coefficient, intercept](
                         const Dataset& data, std::span<const int> rows,
                         RngStream*) -> std::vector<double> {
        if (rows.size() < 2) {
            throw std::invalid_argument("OLS needs a split of at least 2 rows");
        }
        if (data.response < 0 || data.covariates.empty()) {
            throw std::invalid_argument("dataset lacks response/covariate roles");
        }
        const int p = static_cast<int>(data.covariates.size()) + (intercept ? 1 : 0);
        std::vector<std::vector<double>> design;
        design.reserve(rows.size());
        std::vector<double> y;
        y.reserve(rows.size());
        for (int i : rows) {
            std::vector<double> row;
            row.reserve(p);
            if (intercept) row.push_back(1.0);
            for (int c : data.covariates) row.push_back(data.column(c).at(i));
            design.push_back(std::move(row));
            y.push_back(data.column(data.response).at(i));
        }
        int idx = target_coefficient;  // 0 = intercept when present
        if (!intercept) idx = target_coefficient - 1;
        if (idx < 0 || idx >= p) {
            throw std::invalid_argument("target coefficient out of range");
        }
        OlsFit fit = ols_fit(design, y);
        if (fit.dropped[idx]) {
            throw std::runtime_error(
                "target coefficient aliased on this split (constant or "
                "collinear column)");
        }
        return {fit.coef[idx]};
    };
    return spec;
}

EstimatorSpec uniform_endpoint() {
    EstimatorSpec spec;
    spec.name = "uniform-endpoint";
    spec.recommended_delta = 0.0;
    spec.min_split_size = 2;
    spec.procedure = [](const Dataset& data, std::span<const int> rows,
                        RngStream*) -> std::vector<double> {
        if (rows.size() < 2) {
            throw std::invalid_argument("2*max - second-max needs >= 2 points");
        }
        const auto& c = data.column(data.sample_col);
        double best = -std::numeric_limits<double>::infinity();
        double second = best;
        for (int i : rows) {
            double v = c.at(i);
            if (v > best) {
                second = best;
                best = v;
            } else if (v > second) {
                second = v;
            }
        }
        return {2.0 * best - second};
    };
    return spec;
}

EstimatorSpec sample_max() {
    EstimatorSpec spec;
    spec.name = "max";
    spec.procedure = [](const Dataset& data, std::span<const int> rows,
                        RngStream*) -> std::vector<double> {
        require_nonempty(rows);
        const auto& c = data.column(data.sample_col);
        double best = -std::numeric_limits<double>::infinity();
        for (int i : rows) best = std::max(best, c.at(i));
        return {best};
    };
    return spec;
}

EstimatorSpec squared_mean_ustat(bool clamp_nonnegative) {
    EstimatorSpec spec;
    spec.name = clamp_nonnegative ? "sqmean+" : "sqmean";
    spec.recommended_delta = 0.183;
    spec.min_split_size = 2;
    spec.procedure = [clamp_nonnegative](const Dataset& data,
                                         std::span<const int> rows,
                                         RngStream*) -> std::vector<double> {
        if (rows.size() < 2) {
            throw std::invalid_argument("U-statistic needs >= 2 points");
        }
        const auto& c = data.column(data.sample_col);
        const double n = static_cast<double>(rows.size());
        double s1 = 0.0, s2 = 0.0;
        for (int i : rows) {
            double v = c.at(i);
            s1 += v;
            s2 += v * v;
        }
        const double mean = s1 / n;
        const double mean_sq = s2 / n;
        // (sum^2 - sum of squares) / (n(n-1)) without the O(n^2) double sum.
        double u = (n / (n - 1.0)) * mean * mean - mean_sq / (n - 1.0);
        if (clamp_nonnegative && u < 0.0) u = 0.0;
        return {u};
    };
    return spec;
}

std::vector<double> pava(const std::vector<double>& values,
                         const std::vector<double>& weights) {
    const std::size_t n = values.size();
    if (n == 0) throw std::invalid_argument("pava needs at least one value");
    if (weights.size() != n) {
        throw std::invalid_argument("pava values/weights length mismatch");
    }
    for (double w : weights) {
        if (!(w > 0.0)) throw std::invalid_argument("pava weights must be > 0");
    }

    // Stack of merged blocks (pooled mean, pooled weight, extent).
    std::vector<double> mean, weight;
    std::vector<std::size_t> size;
    for (std::size_t i = 0; i < n; ++i) {
        mean.push_back(values[i]);
        weight.push_back(weights[i]);
        size.push_back(1);
        while (mean.size() > 1 && mean[mean.size() - 2] > mean.back()) {
            double w = weight[weight.size() - 2] + weight.back();
            double m = (weight[weight.size() - 2] * mean[mean.size() - 2] +
                        weight.back() * mean.back()) /
                       w;
            mean.pop_back();
            weight.pop_back();
            std::size_t s = size.back();
            size.pop_back();
            mean.back() = m;
            weight.back() = w;
            size.back() += s;
        }
    }

    std::vector<double> fit;
    fit.reserve(n);
    for (std::size_t b = 0; b < mean.size(); ++b) {
        fit.insert(fit.end(), size[b], mean[b]);
    }
    return fit;
}

std::vector<double> pava(const std::vector<double>& values) {
    return pava(values, std::vector<double>(values.size(), 1.0));
}

EstimatorSpec isotonic_at_points(std::vector<double> grid) {
    if (grid.empty()) throw std::invalid_argument("need at least one point");
    EstimatorSpec spec;
    spec.name = grid.size() == 1 ? "isotonic:" + std::to_string(grid[0])
                                 : "isotonic-grid:" + std::to_string(grid.size());
    spec.dim = static_cast<int>(grid.size());
    spec.procedure = [grid](const Dataset& data, std::span<const int> rows,
                            RngStream*) -> std::vector<double> {
        require_nonempty(rows);
        int xcol = data.covariates.empty() ? 0 : data.covariates[0];
        int ycol = data.response >= 0 ? data.response : 1;
        std::vector<int> order(rows.begin(), rows.end());
        const auto& xs = data.column(xcol);
        // Ties broken by original index for determinism.
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return xs.at(a) < xs.at(b); });
        std::vector<double> y;
        y.reserve(order.size());
        for (int i : order) y.push_back(data.column(ycol).at(i));
        auto fit = pava(y);
        std::vector<double> out;
        out.reserve(grid.size());
        for (double x0 : grid) {
            // Left-constant step extension: value at the largest design
            // point <= x0, first fitted value below the grid.
            std::size_t pos = 0;
            for (std::size_t k = 0; k < order.size(); ++k) {
                if (xs.at(order[k]) <= x0) pos = k;
            }
            out.push_back(fit[pos]);
        }
        return out;
    };
    return spec;
}

EstimatorSpec isotonic_at_point(double x0) { return isotonic_at_points({x0}); }

MonotoneMap MonotoneMap::clamp_at_zero() { return {}; }

MonotoneMap MonotoneMap::affine(double a, double b) {
    if (!(a > 0.0)) throw std::invalid_argument("affine map needs slope > 0");
    MonotoneMap m;
    m.kind = Kind::Affine;
    m.a = a;
    m.b = b;
    return m;
}

MonotoneMap MonotoneMap::exp() {
    MonotoneMap m;
    m.kind = Kind::Exp;
    return m;
}

MonotoneMap MonotoneMap::log() {
    MonotoneMap m;
    m.kind = Kind::Log;
    return m;
}

MonotoneMap MonotoneMap::table(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("monotone table needs >= 2 matched points");
    }
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1]) || y[i] < y[i - 1]) {
            throw std::invalid_argument("monotone table must be increasing");
        }
    }
    MonotoneMap m;
    m.kind = Kind::Table;
    m.table_x = std::move(x);
    m.table_y = std::move(y);
    return m;
}

double MonotoneMap::operator()(double v) const {
    switch (kind) {
        case Kind::ClampAtZero:
            return v < 0.0 ? 0.0 : v;
        case Kind::Affine:
            return a * v + b;
        case Kind::Exp:
            return std::exp(v);
        case Kind::Log:
            if (!(v > 0.0)) {
                throw std::domain_error("log map undefined at nonpositive value");
            }
            return std::log(v);
        case Kind::Table: {
            if (v <= table_x.front()) return table_y.front();
            if (v >= table_x.back()) return table_y.back();
            auto it = std::upper_bound(table_x.begin(), table_x.end(), v);
            std::size_t i = static_cast<std::size_t>(it - table_x.begin());
            double t = (v - table_x[i - 1]) / (table_x[i] - table_x[i - 1]);
            return table_y[i - 1] + t * (table_y[i] - table_y[i - 1]);
        }
    }
    throw std::logic_error("unreachable");
}

EstimatorSpec monotone_transform(EstimatorSpec base, MonotoneMap g) {
    EstimatorSpec spec = base;
    spec.name = base.name + "|mono";
    spec.supports_log2m_inflation = false;
    spec.range.reset();
    auto inner = base.procedure;
    spec.procedure = [inner, g](const Dataset& data, std::span<const int> rows,
                                RngStream* rng) {
        auto out = inner(data, rows, rng);
        for (double& v : out) v = g(v);
        return out;
    };
    return spec;
}

double empirical_median_bias(
    const EstimatorSpec& spec,
    const std::function<Dataset(int, RngStream&)>& sampler, double theta0,
    int n, int reps, std::uint64_t seed) {
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
    int at_or_above = 0, at_or_below = 0;
    for (int r = 0; r < reps; ++r) {
        RngStream data_rng = RngStream::derive(seed, "bias-data", r);
        RngStream est_rng = RngStream::derive(seed, "bias-est", r);
        Dataset ds = sampler(n, data_rng);
        std::vector<int> rows(ds.n_rows());
        std::iota(rows.begin(), rows.end(), 0);
        double est = spec(ds, rows, &est_rng)[0];
        // Non-strict on both sides, so both counts can exceed half.
        if (est >= theta0) ++at_or_above;
        if (est <= theta0) ++at_or_below;
    }
    double lo = static_cast<double>(std::min(at_or_above, at_or_below)) / reps;
    return std::max(0.0, 0.5 - lo);
}

EstimatorSpec estimator_by_name(const std::string& name) {
    if (name == "mean") return mean_estimator();
    if (name == "median") return median_estimator(true);
    if (name == "median-lower") return median_estimator(false);
    if (name == "binom") return binomial_proportion();
    if (name == "uniform-endpoint") return uniform_endpoint();
    if (name == "max") return sample_max();
    if (name == "sqmean") return squared_mean_ustat(false);
    if (name == "sqmean+") return squared_mean_ustat(true);
    if (name.rfind("ols:", 0) == 0) {
        return ols_estimator(std::stoi(name.substr(4)), true);
    }
    if (name.rfind("isotonic:", 0) == 0) {
        return isotonic_at_point(std::stod(name.substr(9)));
    }
    throw std::invalid_argument(
        "unknown estimator '" + name +
        "' (try mean|median|binom|ols:<k>|uniform-endpoint|sqmean|isotonic:<x0>)");
}

}  // namespace hulc
