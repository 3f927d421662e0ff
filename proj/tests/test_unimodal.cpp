#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hulc/unimodal.hpp"

using namespace hulc;

namespace {

EstimatorSpec synthetic(std::function<double(RngStream&)> law) {
    EstimatorSpec spec;
    spec.name = "synthetic";
    spec.needs_randomness = true;
    spec.procedure = [law](const Dataset&, std::span<const int>,
                           RngStream* rng) -> std::vector<double> {
        return {law(*rng)};
    };
    return spec;
}

}  // namespace

TEST_CASE("zero stretch reproduces the plain hull of the same splits") {
    RngStream gen(4);
    std::vector<double> v(240);
    for (double& x : v) x = gen.normal();
    Dataset d = Dataset::univariate(std::move(v));

    const std::uint64_t seed = 31;
    auto box = unimodal_hulc(d, mean_estimator(), 0.05, 0.0, 0.0, seed);
    auto raw = hulc_interval_fixed_b(d, mean_estimator(), box.b_star, seed);
    CHECK(box.lo[0] == doctest::Approx(raw.lo[0]).epsilon(1e-15));
    CHECK(box.hi[0] == doctest::Approx(raw.hi[0]).epsilon(1e-15));
    CHECK(box.method == "unimodal");
}

TEST_CASE("width identity (1+2t)(max-min)") {
    RngStream gen(6);
    std::vector<double> v(300);
    for (double& x : v) x = gen.uniform();
    Dataset d = Dataset::univariate(std::move(v));

    for (double t : {0.25, 0.5, 1.0}) {
        const std::uint64_t seed = 500 + static_cast<std::uint64_t>(t * 100);
        auto box = unimodal_hulc(d, mean_estimator(), 0.05, t, 0.5, seed);
        auto raw = hulc_interval_fixed_b(d, mean_estimator(), box.b_star, seed);
        double range = raw.hi[0] - raw.lo[0];
        CHECK(box.width() == doctest::Approx((1.0 + 2.0 * t) * range)
                                 .epsilon(1e-12));
        CHECK(box.lo[0] == doctest::Approx(raw.lo[0] - t * range));
        CHECK(box.hi[0] == doctest::Approx(raw.hi[0] + t * range));
    }
}

TEST_CASE("identical split estimates give a zero-width interval") {
    Dataset d = Dataset::univariate(std::vector<double>(200, 1.5));
    auto box = unimodal_hulc(d, mean_estimator(), 0.05, 0.5, 0.5, 8);
    CHECK(box.lo[0] == doctest::Approx(1.5));
    CHECK(box.hi[0] == doctest::Approx(1.5));
}

TEST_CASE("rejects multivariate estimators and the t=0 delta=1/2 corner") {
    EstimatorSpec bivar;
    bivar.dim = 2;
    bivar.procedure = [](const Dataset&, std::span<const int>,
                         RngStream*) -> std::vector<double> {
        return {0.0, 0.0};
    };
    Dataset d = Dataset::univariate(std::vector<double>(50, 0.0));
    CHECK_THROWS_AS(unimodal_hulc(d, bivar, 0.05, 0.5, 0.5, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(unimodal_hulc(d, mean_estimator(), 0.05, 0.0, 0.5, 1),
                    std::domain_error);
}

TEST_CASE("coverage under maximal median bias with a unimodal limit") {
    // Per-split estimator theta0 - |N(0,1)|: always at or below theta0,
    // median bias exactly 1/2, limit unimodal at the target.
    auto est = synthetic([](RngStream& r) { return -std::fabs(r.normal()); });
    Dataset d = Dataset::univariate(std::vector<double>(64, 0.0));

    for (double t : {0.5, 1.0}) {
        int cover = 0;
        const int reps = t == 0.5 ? 2000 : 1000;
        for (int r = 0; r < reps; ++r) {
            auto box = unimodal_hulc(d, est, 0.05, t, 0.5,
                                     90000 + r * 7 + static_cast<int>(t * 2));
            if (box.lo[0] <= 0.0 && 0.0 <= box.hi[0]) ++cover;
        }
        double se = std::sqrt(0.05 * 0.95 / reps);
        CHECK(static_cast<double>(cover) / reps >= 0.95 - 3.0 * se);
    }
}

TEST_CASE("reproducibility") {
    RngStream gen(12);
    std::vector<double> v(150);
    for (double& x : v) x = gen.normal();
    Dataset d = Dataset::univariate(std::move(v));
    auto a = unimodal_hulc(d, mean_estimator(), 0.1, 0.5, 0.5, 2024);
    auto b = unimodal_hulc(d, mean_estimator(), 0.1, 0.5, 0.5, 2024);
    CHECK(a.lo[0] == b.lo[0]);
    CHECK(a.hi[0] == b.hi[0]);
    CHECK(a.b_star == b.b_star);
}
