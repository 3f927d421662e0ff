#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <vector>

#include "hulc/adaptive.hpp"

using namespace hulc;

TEST_CASE("auto subsample size") {
    CHECK(auto_subsample_size(2000) == 158);
    CHECK(auto_subsample_size(1000) == 99);
    CHECK(auto_subsample_size(1) == 1);
}

TEST_CASE("one-sided synthetic estimator drives delta-hat to 1/2") {
    // Below the full-data estimate on every subsample: L_n(0) = 1.
    EstimatorSpec est;
    est.name = "one-sided";
    est.procedure = [](const Dataset& data, std::span<const int> rows,
                       RngStream*) -> std::vector<double> {
        return {rows.size() == static_cast<std::size_t>(data.n_rows()) ? 0.0
                                                                       : -1.0};
    };
    Dataset d = Dataset::univariate(std::vector<double>(100, 0.0));
    auto de = estimate_delta(d, est, 10, 50, 3);
    CHECK(de.l_n_zero == doctest::Approx(1.0));
    CHECK(de.delta_hat == doctest::Approx(0.5));
}

TEST_CASE("alternating estimator gives delta-hat 0") {
    auto counter = std::make_shared<int>(0);
    EstimatorSpec est;
    est.name = "alternating";
    est.procedure = [counter](const Dataset& data, std::span<const int> rows,
                              RngStream*) -> std::vector<double> {
        if (rows.size() == static_cast<std::size_t>(data.n_rows())) return {0.0};
        return {(*counter)++ % 2 == 0 ? 1.0 : -1.0};
    };
    Dataset d = Dataset::univariate(std::vector<double>(100, 0.0));
    auto de = estimate_delta(d, est, 10, 50, 3);
    CHECK(de.delta_hat == doctest::Approx(0.0));
}

TEST_CASE("estimate_delta determinism and errors") {
    RngStream gen(8);
    std::vector<double> v(500);
    for (double& x : v) x = gen.normal();
    Dataset d = Dataset::univariate(std::move(v));
    auto est = mean_estimator();
    auto a = estimate_delta(d, est, 60, 200, 99);
    auto b = estimate_delta(d, est, 60, 200, 99);
    CHECK(a.delta_hat == b.delta_hat);
    CHECK(a.l_n_zero == b.l_n_zero);

    CHECK_THROWS_AS(estimate_delta(d, est, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_delta(d, est, 500, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_delta(d, est, 60, 0, 1), std::invalid_argument);

    EstimatorSpec failing;
    failing.name = "failing";
    failing.procedure = [](const Dataset& data, std::span<const int> rows,
                           RngStream*) -> std::vector<double> {
        if (rows.size() < static_cast<std::size_t>(data.n_rows())) {
            throw std::runtime_error("boom");
        }
        return {0.0};
    };
    CHECK_THROWS_WITH_AS(estimate_delta(d, failing, 60, 10, 1),
                         doctest::Contains("subsample"), std::runtime_error);
}

TEST_CASE("delta-hat directionality") {
    // Gaussian mean: small delta-hat. Uniform-model MLE: near 1/2.
    RngStream gen(42);
    std::vector<double> g(2000), u(2000);
    for (double& x : g) x = gen.normal();
    for (double& x : u) x = gen.uniform();
    Dataset dg = Dataset::univariate(std::move(g));
    Dataset du = Dataset::univariate(std::move(u));
    int b = auto_subsample_size(2000);
    CHECK(estimate_delta(dg, mean_estimator(), b, 500, 5).delta_hat <= 0.1);
    CHECK(estimate_delta(du, sample_max(), b, 500, 5).delta_hat >= 0.4);
}

TEST_CASE("delta-hat trends with n (consistency flavor)") {
    double prev_mean = 1.0, prev_max = 0.0;
    for (int n : {500, 2000, 8000}) {
        RngStream gen(1000 + n);
        std::vector<double> g(n), u(n);
        for (double& x : g) x = gen.normal();
        for (double& x : u) x = gen.uniform();
        Dataset dg = Dataset::univariate(std::move(g));
        Dataset du = Dataset::univariate(std::move(u));
        int b = auto_subsample_size(n);
        double dm = estimate_delta(dg, mean_estimator(), b, 400, 7).delta_hat;
        double dx = estimate_delta(du, sample_max(), b, 400, 7).delta_hat;
        CHECK(dm <= prev_mean + 0.05);  // trend toward 0 with MC slack
        CHECK(dx >= prev_max - 0.05);   // trend toward 1/2
        prev_mean = dm;
        prev_max = dx;
    }
    CHECK(prev_mean <= 0.1);
    CHECK(prev_max >= 0.45);
}

TEST_CASE("adaptive interval clips pathological delta-hat") {
    EstimatorSpec est;
    est.name = "one-sided";
    est.procedure = [](const Dataset& data, std::span<const int> rows,
                       RngStream*) -> std::vector<double> {
        double s = 0.0;
        for (int i : rows) s += data.column(0).at(i);
        double m = s / rows.size();
        return {rows.size() == static_cast<std::size_t>(data.n_rows()) ? m
                                                                       : m - 100.0};
    };
    RngStream gen(2);
    std::vector<double> v(300);
    for (double& x : v) x = gen.normal();
    Dataset d = Dataset::univariate(std::move(v));

    auto box = adaptive_hulc(d, est, 0.05, {}, 77);
    CHECK(*box.delta_hat == doctest::Approx(0.5));
    CHECK(box.delta_clipped);
    CHECK(box.delta_used == doctest::Approx(0.45));
    CHECK(box.method == "adaptive");

    AdaptiveOptions strict;
    strict.delta_cap_strict = true;
    CHECK_THROWS_WITH_AS(adaptive_hulc(d, est, 0.05, strict, 77),
                         doctest::Contains("unimodal"), std::runtime_error);
}

TEST_CASE("adaptive budget lands on the delta~0 plateau for the mean") {
    AdaptiveOptions opts;
    opts.subsamples = 200;
    int plateau = 0;
    const int seeds = 60;
    for (int s = 0; s < seeds; ++s) {
        RngStream gen = RngStream::derive(50, "plateau", s);
        std::vector<double> v(2000);
        for (double& x : v) x = gen.normal();
        Dataset d = Dataset::univariate(std::move(v));
        auto box = adaptive_hulc(d, mean_estimator(), 0.05, opts, 600 + s);
        if (box.b_star == 5 || box.b_star == 6) ++plateau;
    }
    CHECK(static_cast<double>(plateau) / seeds >= 0.95);
}

TEST_CASE("adaptive coverage tracks the known-delta construction") {
    AdaptiveOptions opts;
    opts.subsamples = 200;
    int cover_adaptive = 0, cover_plain = 0;
    const int reps = 800;
    for (int r = 0; r < reps; ++r) {
        RngStream gen = RngStream::derive(60, "cov", r);
        std::vector<double> v(500);
        for (double& x : v) x = gen.normal();
        Dataset d = Dataset::univariate(std::move(v));
        auto a = adaptive_hulc(d, mean_estimator(), 0.05, opts, 7000 + r);
        auto p = hulc_interval(d, mean_estimator(), 0.05, 0.0, 7000 + r);
        if (a.lo[0] <= 0.0 && 0.0 <= a.hi[0]) ++cover_adaptive;
        if (p.lo[0] <= 0.0 && 0.0 <= p.hi[0]) ++cover_plain;
    }
    double diff = std::fabs(cover_adaptive - cover_plain) / double(reps);
    CHECK(diff <= 0.03);
}
