#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hulc/adaptive.hpp"
#include "hulc/hulc.hpp"
#include "hulc/unimodal.hpp"

namespace hulc {

// Closed interval used by the Wald baselines.
struct Interval {
    double lo = 0.0, hi = 0.0;
    double width() const { return hi - lo; }
    bool covers(double v) const { return lo <= v && v <= hi; }
};

Interval wald_mean(const Dataset& data, double alpha);
Interval wald_ols_sandwich(const Dataset& data, double alpha, int coefficient,
                           bool intercept = true);

// Data generators for the simulation designs.
Dataset gen_lm_gamma(int n, double gamma, RngStream& rng);
Dataset gen_multireg(int n, RngStream& rng);
Dataset gen_monotone(int n, const std::string& flavor, RngStream& rng);

// Tabulated slope targets for gen_lm_gamma (gamma = 0 is analytic). Large
// sample least-squares re-derivation lives in the regen-targets tool.
double lm_gamma_target(double gamma);
constexpr double kMultiregTarget = -0.137323;
double monotone_truth(const std::string& flavor, double x);

enum class BaselineKind { None, WaldMean, WaldOls };

struct Scenario {
    std::string name;
    std::function<Dataset(int, RngStream&)> generate;
    double theta0 = 0.0;
    EstimatorSpec estimator;
    BaselineKind baseline = BaselineKind::None;
    int baseline_coefficient = 1;
};

// Registry. Parameters: lm-gamma takes "gamma", sqmean takes "mu",
// t-heavy takes "df", binom takes "p", monotone-* take "x0".
Scenario get_scenario(const std::string& name,
                      const std::map<std::string, double>& params = {});
std::vector<std::string> scenario_names();

struct MethodDescriptor {
    enum class Kind { Hulc, Adaptive, Unimodal, Wald } kind = Kind::Hulc;
    double delta = 0.0;        // Hulc
    double t = 0.5;            // Unimodal
    double unimodal_delta = 0.5;
    AdaptiveOptions adaptive;
    bool use_recommended_delta = true;  // Hulc: take the estimator's default
};

MethodDescriptor method_by_name(const std::string& name);

struct SimReport {
    int replications = 0;
    double coverage = 0.0;
    double coverage_se = 0.0;       // sqrt(cov (1 - cov) / reps)
    double mean_width = 0.0;
    double median_width = 0.0;
    double baseline_coverage = -1.0;  // -1 when no baseline
    double baseline_mean_width = 0.0;
    double width_ratio = -1.0;        // mean of per-rep method/baseline ratios
    int failures = 0;
    double wall_seconds = 0.0;
};

SimReport run_coverage(const Scenario& scenario, const MethodDescriptor& method,
                       int n, int reps, double alpha, std::uint64_t seed,
                       int workers = 1);

// Step confidence band for a monotone function from per-point intervals,
// with running-max/reverse-running-min tightening.
struct StepBand {
    std::vector<double> x, lower, upper;  // values at and right of each x
};

StepBand monotone_band(const std::vector<double>& points,
                       const std::vector<Interval>& intervals);

// Per-point confidence intervals for the band: the adaptive method builds
// one shared-split hull over the whole grid (budget solved at alpha/k),
// the unimodal method builds per-point stretched hulls at level alpha/k.
std::vector<Interval> band_intervals(const Dataset& data,
                                     const std::vector<double>& points,
                                     double alpha,
                                     const MethodDescriptor& method,
                                     std::uint64_t seed);

}  // namespace hulc
