#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hulc/dataset.hpp"
#include "hulc/rng.hpp"

namespace hulc {

// A named, pure procedure from a dataset slice to a d-vector. Procedures
// are deterministic given the slice and the RNG stream.
struct EstimatorSpec {
    std::string name;
    int dim = 1;
    int min_split_size = 1;
    std::optional<double> recommended_delta;  // nullopt = unknown
    bool needs_randomness = false;

    // Present for estimators whose hull may be widened by log(2)/m
    // (binomial proportion, Poisson rate). The pair clamps the widened
    // interval, e.g. [0, 1] for a proportion.
    bool supports_log2m_inflation = false;
    std::optional<std::pair<double, double>> range;

    std::function<std::vector<double>(const Dataset&, std::span<const int>,
                                      RngStream*)>
        procedure;

    std::vector<double> operator()(const Dataset& data, std::span<const int> rows,
                                   RngStream* rng = nullptr) const {
        return procedure(data, rows, rng);
    }
};

EstimatorSpec mean_estimator();
EstimatorSpec median_estimator(bool randomized = true);
EstimatorSpec binomial_proportion();
EstimatorSpec ols_estimator(int target_coefficient, bool intercept = true);
EstimatorSpec uniform_endpoint();
EstimatorSpec sample_max();  // uniform-model MLE; maximally median-biased
EstimatorSpec squared_mean_ustat(bool clamp_nonnegative = false);
EstimatorSpec isotonic_at_point(double x0);
// Isotonic fit evaluated at every grid point; one d-dimensional output
// per call, so all points share one sort + PAVA pass.
EstimatorSpec isotonic_at_points(std::vector<double> grid);

// Isotonic (nondecreasing) weighted least-squares fit by pool-adjacent
// violators. values and weights must have equal length; weights > 0.
std::vector<double> pava(const std::vector<double>& values,
                         const std::vector<double>& weights);
std::vector<double> pava(const std::vector<double>& values);

// Monotone maps usable with monotone_transform.
struct MonotoneMap {
    enum class Kind { ClampAtZero, Affine, Exp, Log, Table };
    Kind kind = Kind::ClampAtZero;
    double a = 1.0, b = 0.0;  // affine: a*x + b, a > 0
    std::vector<double> table_x, table_y;  // nondecreasing lookup table

    static MonotoneMap clamp_at_zero();
    static MonotoneMap affine(double a, double b);
    static MonotoneMap exp();
    static MonotoneMap log();
    static MonotoneMap table(std::vector<double> x, std::vector<double> y);

    double operator()(double v) const;
};

// Estimator returning g(base(slice)); recommended delta is inherited
// since a monotone map can only shrink median bias.
EstimatorSpec monotone_transform(EstimatorSpec base, MonotoneMap g);

// Plug-in median bias (1/2 - min{freq(theta_hat >= theta0),
// freq(theta_hat <= theta0)})_+ over Monte-Carlo replications.
double empirical_median_bias(
    const EstimatorSpec& spec,
    const std::function<Dataset(int, RngStream&)>& sampler, double theta0,
    int n, int reps, std::uint64_t seed);

// Registry lookup: mean | median | binom | ols:<k> | uniform-endpoint |
// sqmean | isotonic:<x0>.
EstimatorSpec estimator_by_name(const std::string& name);

}  // namespace hulc
