#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hulc/splitmath.hpp"

using namespace hulc;

TEST_CASE("miscoverage examples") {
    CHECK(miscoverage_p(1, 0.3) == doctest::Approx(1.0));
    CHECK(miscoverage_p(6, 0.0) == doctest::Approx(0.03125));
    CHECK(miscoverage_p(2, 0.25) == doctest::Approx(0.625));
    CHECK(miscoverage_p(4, 0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(miscoverage_p(0, 0.1), std::domain_error);
    CHECK_THROWS_AS(miscoverage_p(3, -0.01), std::domain_error);
    CHECK_THROWS_AS(miscoverage_p(3, 0.51), std::domain_error);
}

TEST_CASE("miscoverage monotone in delta and b") {
    for (int b = 1; b <= 64; ++b) {
        double prev = -1.0;
        for (int i = 0; i <= 50; ++i) {
            double d = i / 100.0;
            double p = miscoverage_p(b, d);
            CHECK(p >= prev - 1e-15);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            prev = p;
        }
    }
    for (int i = 0; i < 50; ++i) {
        double d = i / 100.0;
        for (int b = 2; b <= 64; ++b) {
            CHECK(miscoverage_p(b, d) <= miscoverage_p(b - 1, d) + 1e-15);
        }
    }
}

TEST_CASE("miscoverage stable for large b near delta 0.49") {
    double p = miscoverage_p(200, 0.49);
    CHECK(p > 0.0);
    CHECK(p <= 1.0);
    CHECK(std::isfinite(p));
}

TEST_CASE("solve_budget pinned values") {
    SplitBudget b = solve_budget(0.05, 0.0);
    CHECK(b.b_solved == 6);
    CHECK(b.tau == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(b.p_at_b == doctest::Approx(0.03125));
    CHECK(b.p_at_b_minus_1 == doctest::Approx(0.0625));
    CHECK(solve_budget(0.05, 0.4).b_solved == 29);
    CHECK(solve_budget(0.1, 0.25).b_solved == 9);
}

TEST_CASE("solve_budget reproduces the reference 27-entry table") {
    const double alphas[3] = {0.15, 0.1, 0.05};
    const int table[9][3] = {{4, 5, 6},   {4, 5, 6},   {5, 5, 7},
                             {5, 6, 7},   {6, 7, 9},   {7, 9, 11},
                             {9, 11, 14}, {12, 15, 19}, {19, 22, 29}};
    for (int r = 0; r < 9; ++r) {
        double delta = r * 0.05;
        for (int c = 0; c < 3; ++c) {
            CHECK(solve_budget(alphas[c], delta).b_solved == table[r][c]);
        }
    }
}

TEST_CASE("solve_budget invariants on a grid") {
    for (double alpha : {0.01, 0.025, 0.05, 0.1, 0.2, 0.33, 0.5, 0.9}) {
        for (double delta : {0.0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.45, 0.49}) {
            SplitBudget b = solve_budget(alpha, delta);
            CHECK(b.p_at_b <= alpha);
            CHECK(alpha < b.p_at_b_minus_1);
            CHECK(b.tau >= 0.0);
            CHECK(b.tau < 1.0);
            // Exact-alpha randomization identity.
            double mixed = b.tau * b.p_at_b_minus_1 + (1.0 - b.tau) * b.p_at_b;
            CHECK(mixed == doctest::Approx(alpha).epsilon(1e-12));
            // Sandwich: standard ceil lower bound, strict-ceil upper bound.
            double lo = std::ceil(std::log(2.0 / alpha) / std::log(2.0));
            double hi = std::floor(std::log(2.0 / alpha) /
                                   std::log(2.0 / (1.0 + 2.0 * delta))) +
                        1.0;
            CHECK(b.b_solved >= static_cast<int>(lo));
            CHECK(b.b_solved <= static_cast<int>(hi));
        }
    }
}

TEST_CASE("solve_budget domain errors") {
    CHECK_THROWS_AS(solve_budget(0.05, 0.5), std::domain_error);
    CHECK_THROWS_WITH_AS(solve_budget(0.05, 0.5),
                         doctest::Contains("unimodal"), std::domain_error);
    CHECK_THROWS_AS(solve_budget(0.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(solve_budget(1.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(solve_budget(0.05, -0.1), std::domain_error);
}

TEST_CASE("randomize_b branch mapping") {
    SplitBudget b = solve_budget(0.05, 0.0);  // b=6, tau=0.6
    CHECK(randomize_b(b, 0.5) == 5);
    CHECK(randomize_b(b, 0.9) == 6);
    SplitBudget degenerate = solve_budget(0.03125, 0.0);  // tau exactly 0
    CHECK(degenerate.tau == doctest::Approx(0.0));
    CHECK(randomize_b(degenerate, 0.7) == degenerate.b_solved);
}

TEST_CASE("stability radius") {
    // tau = 0 exactly: alpha sits on P(B;0) -> zero radius.
    CHECK(stability_radius(0.03125, 0.0) == doctest::Approx(0.0));

    double r = stability_radius(0.05, 0.0);
    CHECK(r > 0.0);
    CHECK(r < 0.4);
    CHECK(solve_budget(0.05, r * 0.99).b_solved == 6);

    // Scan property: perturbing delta by <= radius never changes b_solved.
    for (double alpha : {0.03, 0.05, 0.1, 0.15, 0.25}) {
        for (double delta : {0.0, 0.05, 0.1, 0.2, 0.3, 0.4}) {
            double rad = stability_radius(alpha, delta);
            int b0 = solve_budget(alpha, delta).b_solved;
            for (double f : {0.25, 0.5, 0.9, 0.999}) {
                double up = delta + rad * f;
                double down = delta - rad * f;
                if (up < 0.5) CHECK(solve_budget(alpha, up).b_solved == b0);
                if (down >= 0.0) CHECK(solve_budget(alpha, down).b_solved == b0);
            }
        }
    }
}

TEST_CASE("unimodal_q examples") {
    CHECK(unimodal_q(4, 0.0, 0.1) == doctest::Approx(miscoverage_p(4, 0.1)));
    CHECK(unimodal_q(3, 1.0, 0.5) == doctest::Approx(0.25));
    CHECK(unimodal_q(1, 5.0, 0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(unimodal_q(2, -0.5, 0.1), std::domain_error);
}

TEST_CASE("solve_unimodal_budget") {
    CHECK(solve_unimodal_budget(0.05, 1.0, 0.5).b_solved == 6);

    // At t=0 the budget coincides with the plain solver and the split-count
    // distributions match: P(B*=B-1) = 1 - eta = tau.
    UnimodalBudget u = solve_unimodal_budget(0.05, 0.0, 0.0);
    SplitBudget p = solve_budget(0.05, 0.0);
    CHECK(u.b_solved == p.b_solved);
    CHECK(1.0 - u.eta == doctest::Approx(p.tau).epsilon(1e-12));

    CHECK_THROWS_AS(solve_unimodal_budget(0.05, 0.0, 0.5), std::domain_error);

    // Boundary: alpha just below 1. Q(1;t,0)=1 exceeds alpha, so the
    // smallest valid count is 2 and the randomization sends almost all
    // mass to B*=1.
    UnimodalBudget edge = solve_unimodal_budget(1.0 - 1e-9, 1.0, 0.0);
    CHECK(edge.b_solved == 2);
    CHECK(edge.eta == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(randomize_unimodal_b(edge, 0.5) == 1);
}

TEST_CASE("unimodal randomization direction and identities") {
    for (double alpha : {0.01, 0.05, 0.1, 0.2}) {
        for (double t : {0.0, 0.25, 0.5, 1.0}) {
            for (double delta : {0.0, 0.1, 0.25, 0.5}) {
                if (t == 0.0 && delta == 0.5) continue;
                UnimodalBudget u = solve_unimodal_budget(alpha, t, delta);
                CHECK(u.q_at_b <= alpha);
                CHECK(alpha < u.q_at_b_minus_1);
                double mixed =
                    u.eta * u.q_at_b + (1.0 - u.eta) * u.q_at_b_minus_1;
                CHECK(mixed == doctest::Approx(alpha).epsilon(1e-12));
                // U <= eta picks the larger count.
                if (u.eta > 0.0) {
                    CHECK(randomize_unimodal_b(u, u.eta * 0.5) == u.b_solved);
                }
                CHECK(randomize_unimodal_b(u, u.eta + (1 - u.eta) * 0.5) ==
                      u.b_solved - 1);
            }
        }
    }
    // b_solved is nonincreasing in t.
    for (double delta : {0.0, 0.2, 0.4}) {
        int prev = solve_unimodal_budget(0.05, 0.0, delta).b_solved;
        for (double t : {0.1, 0.3, 0.5, 1.0, 2.0}) {
            int b = solve_unimodal_budget(0.05, t, delta).b_solved;
            CHECK(b <= prev);
            prev = b;
        }
    }
}

TEST_CASE("wendel closed form") {
    CHECK(wendel_miscoverage(2, 1) == doctest::Approx(0.5));
    for (int b = 2; b <= 12; ++b) {
        CHECK(wendel_miscoverage(b, 1) ==
              doctest::Approx(miscoverage_p(b, 0.0)).epsilon(1e-15));
    }
    for (int d = 1; d <= 6; ++d) {
        CHECK(wendel_miscoverage(d + 1, d) ==
              doctest::Approx(1.0 - std::pow(2.0, -d)));
    }
    CHECK_THROWS_AS(wendel_miscoverage(3, 3), std::domain_error);
    CHECK_THROWS_AS(wendel_miscoverage(2, 0), std::domain_error);
}

TEST_CASE("rect union bound") {
    CHECK(rect_union_bound(6, 1, 0.0) == doctest::Approx(0.03125));
    CHECK(rect_union_bound(10, 5, 0.0) == doctest::Approx(5.0 / 512.0));
    CHECK(rect_union_bound(1, 3, 0.0) == doctest::Approx(1.0));
}
