#include "hulc/simlab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "hulc/stats.hpp"

namespace hulc {

Interval wald_mean(const Dataset& data, double alpha) {
    const auto& v = data.column(data.sample_col);
    if (v.size() < 2) throw std::invalid_argument("Wald mean needs n >= 2");
    const double m = vec_mean(v);
    const double sd = vec_sd(v);
    const double z = normal_quantile(1.0 - alpha / 2.0);
    const double half = z * sd / std::sqrt(static_cast<double>(v.size()));
    return {m - half, m + half};
}

Interval wald_ols_sandwich(const Dataset& data, double alpha, int coefficient,
                           bool intercept) {
    if (data.response < 0 || data.covariates.empty()) {
        throw std::invalid_argument("dataset lacks response/covariate roles");
    }
    const int n = data.n_rows();
    std::vector<std::vector<double>> design;
    design.reserve(n);
    std::vector<double> y;
    y.reserve(n);
    for (int i = 0; i < n; ++i) {
        std::vector<double> row;
        if (intercept) row.push_back(1.0);
        for (int c : data.covariates) row.push_back(data.column(c).at(i));
        design.push_back(std::move(row));
        y.push_back(data.column(data.response).at(i));
    }
    int idx = intercept ? coefficient : coefficient - 1;
    OlsFit fit = ols_fit(design, y);
    const double var = sandwich_variance(design, fit, idx);
    const double z = normal_quantile(1.0 - alpha / 2.0);
    const double half = z * std::sqrt(var);
    return {fit.coef[idx] - half, fit.coef[idx] + half};
}

Dataset gen_lm_gamma(int n, double gamma, RngStream& rng) {
    if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = 10.0 * rng.uniform();
        double xi = rng.normal();
        y[i] = 1.0 + 2.0 * x[i] + gamma * std::pow(x[i], 1.7) +
               std::exp(gamma * x[i]) * xi;
    }
    return Dataset::xy(std::move(x), std::move(y));
}

double lm_gamma_target(double gamma) {
    if (gamma == 0.0) return 2.0;
    if (gamma == 0.25) return 3.2791;
    if (gamma == 0.5) return 4.5567;
    if (gamma == 0.75) return 5.8239;
    if (gamma == 1.0) return 6.8093;
    throw std::invalid_argument(
        "slope target tabulated only for gamma in {0, 0.25, 0.5, 0.75, 1}");
}

Dataset gen_multireg(int n, RngStream& rng) {
    const double norm = std::sqrt(5.13);
    const double theta[6] = {1.3 / norm, -1.3 / norm, 1.0 / norm,
                             -0.5 / norm, -0.5 / norm, -0.5 / norm};
    Dataset ds;
    ds.names = {"x1", "x2", "x3", "x4", "x5", "x6", "y"};
    ds.cols.assign(7, {});
    for (auto& c : ds.cols) c.reserve(n);
    for (int i = 0; i < n; ++i) {
        double x1 = 2.0 * rng.uniform() - 1.0;
        double x2 = 2.0 * rng.uniform() - 1.0;
        double z1 = 2.0 * rng.uniform() - 1.0;
        double z2 = 2.0 * rng.uniform() - 1.0;
        double x3 = 0.2 * x1 + 0.2 * (x2 + 2.0) * (x2 + 2.0) + 0.2 * z1;
        double x4 = 0.1 + 0.1 * (x1 + x2) + 0.3 * (x1 + 1.5) * (x1 + 1.5) +
                    0.2 * z2;
        double x5 = rng.bernoulli(1.0 / (1.0 + std::exp(-x1))) ? 1.0 : 0.0;
        double x6 = rng.bernoulli(1.0 / (1.0 + std::exp(-x2))) ? 1.0 : 0.0;
        double dot = theta[0] * x1 + theta[1] * x2 + theta[2] * x3 +
                     theta[3] * x4 + theta[4] * x5 + theta[5] * x6;
        double y = std::fabs(dot) + rng.normal();
        ds.cols[0].push_back(x1);
        ds.cols[1].push_back(x2);
        ds.cols[2].push_back(x3);
        ds.cols[3].push_back(x4);
        ds.cols[4].push_back(x5);
        ds.cols[5].push_back(x6);
        ds.cols[6].push_back(y);
    }
    ds.response = 6;
    ds.covariates = {0, 1, 2, 3, 4, 5};
    return ds;
}

double monotone_truth(const std::string& flavor, double x) {
    if (flavor == "flat") return 0.0;
    if (flavor == "fig4" || flavor == "fig8") {
        if (x <= 0.5) return 0.0;
        double t = (x - 0.5) / 0.5;
        return t * t;
    }
    throw std::invalid_argument("unknown monotone flavor '" + flavor + "'");
}

Dataset gen_monotone(int n, const std::string& flavor, RngStream& rng) {
    std::vector<double> x(n), y(n);
    const bool random_design = flavor == "fig4";
    const double noise_sd = flavor == "flat" ? 1.0 : 0.1;
    for (int i = 0; i < n; ++i) {
        x[i] = random_design ? rng.uniform()
                             : static_cast<double>(i + 1) / n;
        y[i] = monotone_truth(flavor, x[i]) + rng.normal(0.0, noise_sd);
    }
    return Dataset::xy(std::move(x), std::move(y));
}

namespace {

double param_or(const std::map<std::string, double>& params,
                const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

}  // namespace

Scenario get_scenario(const std::string& name,
                      const std::map<std::string, double>& params) {
    Scenario s;
    s.name = name;
    if (name == "gauss-mean") {
        s.generate = [](int n, RngStream& rng) {
            std::vector<double> v(n);
            for (double& x : v) x = rng.normal();
            return Dataset::univariate(std::move(v));
        };
        s.theta0 = 0.0;
        s.estimator = mean_estimator();
        s.baseline = BaselineKind::WaldMean;
        return s;
    }
    if (name == "lm-gamma") {
        double gamma = param_or(params, "gamma", 0.0);
        s.generate = [gamma](int n, RngStream& rng) {
            return gen_lm_gamma(n, gamma, rng);
        };
        s.theta0 = lm_gamma_target(gamma);
        s.estimator = ols_estimator(1, true);
        s.baseline = BaselineKind::WaldOls;
        s.baseline_coefficient = 1;
        return s;
    }
    if (name == "multireg") {
        s.generate = [](int n, RngStream& rng) { return gen_multireg(n, rng); };
        s.theta0 = kMultiregTarget;
        s.estimator = ols_estimator(1, true);
        s.baseline = BaselineKind::WaldOls;
        s.baseline_coefficient = 1;
        return s;
    }
    if (name == "uniform") {
        s.generate = [](int n, RngStream& rng) {
            std::vector<double> v(n);
            for (double& x : v) x = rng.uniform();
            return Dataset::univariate(std::move(v));
        };
        s.theta0 = 1.0;
        s.estimator = uniform_endpoint();
        return s;
    }
    if (name == "uniform-mle") {
        s.generate = [](int n, RngStream& rng) {
            std::vector<double> v(n);
            for (double& x : v) x = rng.uniform();
            return Dataset::univariate(std::move(v));
        };
        s.theta0 = 1.0;
        s.estimator = sample_max();
        return s;
    }
    if (name == "sqmean") {
        double mu = param_or(params, "mu", 0.0);
        s.generate = [mu](int n, RngStream& rng) {
            std::vector<double> v(n);
            for (double& x : v) x = rng.normal(mu, 1.0);
            return Dataset::univariate(std::move(v));
        };
        s.theta0 = mu * mu;
        s.estimator = squared_mean_ustat(true);
        return s;
    }
    if (name == "t-heavy") {
        double df = param_or(params, "df", 1.5);
        s.generate = [df](int n, RngStream& rng) {
            std::student_t_distribution<double> t(df);
            std::vector<double> v(n);
            for (double& x : v) x = t(rng.engine());
            return Dataset::univariate(std::move(v));
        };
        s.theta0 = 0.0;  // symmetric center (the mean for df > 1)
        s.estimator = mean_estimator();
        return s;
    }
    if (name == "binom") {
        double p = param_or(params, "p", 0.3);
        s.generate = [p](int n, RngStream& rng) {
            std::vector<double> v(n);
            for (double& x : v) x = rng.bernoulli(p) ? 1.0 : 0.0;
            return Dataset::univariate(std::move(v));
        };
        s.theta0 = p;
        s.estimator = binomial_proportion();
        return s;
    }
    if (name.rfind("monotone-", 0) == 0) {
        std::string flavor = name.substr(9);
        double x0 = param_or(params, "x0", 0.5);
        s.generate = [flavor](int n, RngStream& rng) {
            return gen_monotone(n, flavor, rng);
        };
        s.theta0 = monotone_truth(flavor, x0);
        s.estimator = isotonic_at_point(x0);
        return s;
    }
    throw std::invalid_argument("unknown scenario '" + name + "'; known: " +
                                [] {
                                    std::string all;
                                    for (const auto& n : scenario_names()) {
                                        if (!all.empty()) all += ", ";
                                        all += n;
                                    }
                                    return all;
                                }());
}

std::vector<std::string> scenario_names() {
    return {"gauss-mean",  "lm-gamma",      "multireg",
            "uniform",     "uniform-mle",   "sqmean",
            "t-heavy",     "binom",         "monotone-fig4",
            "monotone-fig8", "monotone-flat"};
}

MethodDescriptor method_by_name(const std::string& name) {
    MethodDescriptor m;
    if (name == "hulc") {
        m.kind = MethodDescriptor::Kind::Hulc;
    } else if (name == "adaptive") {
        m.kind = MethodDescriptor::Kind::Adaptive;
    } else if (name == "unimodal") {
        m.kind = MethodDescriptor::Kind::Unimodal;
    } else if (name == "wald") {
        m.kind = MethodDescriptor::Kind::Wald;
    } else {
        throw std::invalid_argument(
            "unknown method '" + name + "' (hulc|adaptive|unimodal|wald)");
    }
    return m;
}

namespace {

Interval method_interval(const Scenario& scenario,
                         const MethodDescriptor& method, const Dataset& data,
                         double alpha, std::uint64_t rep_seed) {
    switch (method.kind) {
        case MethodDescriptor::Kind::Hulc: {
            double delta = method.delta;
            if (method.use_recommended_delta &&
                scenario.estimator.recommended_delta) {
                delta = *scenario.estimator.recommended_delta;
            }
            auto box = hulc_interval(data, scenario.estimator, alpha, delta,
                                     rep_seed);
            return {box.lo[0], box.hi[0]};
        }
        case MethodDescriptor::Kind::Adaptive: {
            auto box = adaptive_hulc(data, scenario.estimator, alpha,
                                     method.adaptive, rep_seed);
            return {box.lo[0], box.hi[0]};
        }
        case MethodDescriptor::Kind::Unimodal: {
            auto box = unimodal_hulc(data, scenario.estimator, alpha, method.t,
                                     method.unimodal_delta, rep_seed);
            return {box.lo[0], box.hi[0]};
        }
        case MethodDescriptor::Kind::Wald:
            return scenario.baseline == BaselineKind::WaldOls
                       ? wald_ols_sandwich(data, alpha,
                                           scenario.baseline_coefficient)
                       : wald_mean(data, alpha);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

SimReport run_coverage(const Scenario& scenario, const MethodDescriptor& method,
                       int n, int reps, double alpha, std::uint64_t seed,
                       int workers) {
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<char> ok(reps, 0), covered(reps, 0), base_covered(reps, 0);
    std::vector<double> widths(reps, 0.0), base_widths(reps, 0.0),
        ratios(reps, 0.0);
    std::vector<char> has_ratio(reps, 0);
    const bool with_baseline = scenario.baseline != BaselineKind::None;

    auto run_rep = [&](int r) {
        std::uint64_t rep_seed = mix64(seed ^ mix64(0x5e11ULL + r));
        try {
            RngStream data_rng = RngStream::derive(rep_seed, "scenario-data");
            Dataset data = scenario.generate(n, data_rng);
            Interval ci = method_interval(scenario, method, data, alpha,
                                          rep_seed);
            covered[r] = ci.covers(scenario.theta0) ? 1 : 0;
            widths[r] = ci.width();
            if (with_baseline) {
                Interval base =
                    scenario.baseline == BaselineKind::WaldOls
                        ? wald_ols_sandwich(data, alpha,
                                            scenario.baseline_coefficient)
                        : wald_mean(data, alpha);
                base_covered[r] = base.covers(scenario.theta0) ? 1 : 0;
                base_widths[r] = base.width();
                if (base.width() > 0.0) {
                    ratios[r] = ci.width() / base.width();
                    has_ratio[r] = 1;
                }
            }
            ok[r] = 1;
        } catch (const std::exception&) {
            ok[r] = 0;  // tallied as a failure, run continues
        }
    };

    workers = std::max(1, workers);
    if (workers == 1) {
        for (int r = 0; r < reps; ++r) run_rep(r);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < reps;
                     r = next.fetch_add(1)) {
                    run_rep(r);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    SimReport rep;
    rep.replications = reps;
    std::vector<double> good_widths;
    double ratio_sum = 0.0;
    int ratio_count = 0, successes = 0, cover_count = 0, base_cover_count = 0;
    double width_sum = 0.0, base_width_sum = 0.0;
    for (int r = 0; r < reps; ++r) {
        if (!ok[r]) {
            ++rep.failures;
            continue;
        }
        ++successes;
        cover_count += covered[r];
        width_sum += widths[r];
        good_widths.push_back(widths[r]);
        if (with_baseline) {
            base_cover_count += base_covered[r];
            base_width_sum += base_widths[r];
            if (has_ratio[r]) {
                ratio_sum += ratios[r];
                ++ratio_count;
            }
        }
    }
    if (successes > 0) {
        rep.coverage = static_cast<double>(cover_count) / successes;
        rep.coverage_se =
            std::sqrt(rep.coverage * (1.0 - rep.coverage) / successes);
        rep.mean_width = width_sum / successes;
        std::nth_element(good_widths.begin(),
                         good_widths.begin() + good_widths.size() / 2,
                         good_widths.end());
        rep.median_width = good_widths[good_widths.size() / 2];
        if (with_baseline) {
            rep.baseline_coverage =
                static_cast<double>(base_cover_count) / successes;
            rep.baseline_mean_width = base_width_sum / successes;
            if (ratio_count > 0) rep.width_ratio = ratio_sum / ratio_count;
        }
    }
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return rep;
}

StepBand monotone_band(const std::vector<double>& points,
                       const std::vector<Interval>& intervals) {
    const std::size_t k = points.size();
    if (k == 0 || intervals.size() != k) {
        throw std::invalid_argument("points/intervals length mismatch");
    }
    for (std::size_t i = 1; i < k; ++i) {
        if (!(points[i] > points[i - 1])) {
            throw std::invalid_argument("points must be strictly increasing");
        }
    }
    StepBand band;
    band.x = points;
    band.lower.resize(k);
    band.upper.resize(k);
    // Monotonicity of the target lets later lower bounds inherit earlier
    // ones (running max) and earlier upper bounds inherit later ones
    // (reverse running min).
    double run = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
        run = std::max(run, intervals[i].lo);
        band.lower[i] = run;
    }
    run = std::numeric_limits<double>::infinity();
    for (std::size_t i = k; i-- > 0;) {
        run = std::min(run, intervals[i].hi);
        band.upper[i] = run;
    }
    return band;
}

std::vector<Interval> band_intervals(const Dataset& data,
                                     const std::vector<double>& points,
                                     double alpha,
                                     const MethodDescriptor& method,
                                     std::uint64_t seed) {
    const int k = static_cast<int>(points.size());
    if (k == 0) throw std::invalid_argument("need at least one point");
    std::vector<Interval> out(k);
    switch (method.kind) {
        case MethodDescriptor::Kind::Adaptive: {
            // One hull over the whole grid: the per-point level is still
            // alpha/k (the budget is solved at alpha/dim), but the splits
            // are shared, so the band inherits the joint behaviour of one
            // isotonic fit per split instead of k independent ones.
            EstimatorSpec est =
                isotonic_at_points(std::vector<double>(points));
            ConfidenceBox box =
                adaptive_hulc(data, est, alpha, method.adaptive, seed);
            for (int i = 0; i < k; ++i) out[i] = {box.lo[i], box.hi[i]};
            break;
        }
        case MethodDescriptor::Kind::Unimodal: {
            // Stretched hulls are univariate; fall back to per-point
            // intervals at the union-bound level.
            const double level = alpha / k;
            for (int i = 0; i < k; ++i) {
                EstimatorSpec est = isotonic_at_point(points[i]);
                std::uint64_t pt_seed = mix64(seed ^ mix64(0xba9dULL + i));
                ConfidenceBox box =
                    unimodal_hulc(data, est, level, method.t,
                                  method.unimodal_delta, pt_seed);
                out[i] = {box.lo[0], box.hi[0]};
            }
            break;
        }
        default:
            throw std::invalid_argument(
                "band supports the adaptive and unimodal methods only");
    }
    return out;
}

}  // namespace hulc
