#pragma once

#include <stdexcept>

namespace hulc {

// Solved split count for a target miscoverage level, together with the
// randomization weight that makes the miscoverage exactly alpha.
struct SplitBudget {
    double alpha = 0.0;
    double delta = 0.0;
    int b_solved = 0;            // smallest B with P(B; delta) <= alpha
    double tau = 0.0;            // randomization weight in [0, 1)
    double p_at_b = 0.0;         // P(B; delta)
    double p_at_b_minus_1 = 0.0; // P(B - 1; delta)
};

// Same bookkeeping for the unimodality-stretched construction.
struct UnimodalBudget {
    double alpha = 0.0;
    double t = 0.0;
    double delta = 0.0;
    int b_solved = 0;            // smallest B with Q(B; t, delta) <= alpha
    double eta = 0.0;            // randomization weight; U <= eta picks B (not B-1)
    double q_at_b = 0.0;
    double q_at_b_minus_1 = 0.0;
};

// Hull miscoverage P(B; delta) = (1/2 - delta)^B + (1/2 + delta)^B.
double miscoverage_p(int b, double delta);

// Stretched-hull miscoverage Q(B; t, delta) = P(B; delta) * (1 + t)^(1 - B).
double unimodal_q(int b, double t, double delta);

SplitBudget solve_budget(double alpha, double delta);

// B* from a single uniform draw: b_solved - 1 if u <= tau, else b_solved.
int randomize_b(const SplitBudget& budget, double u);

UnimodalBudget solve_unimodal_budget(double alpha, double t, double delta);

// B* for the unimodal construction. Note the direction is opposite to
// randomize_b: u <= eta picks the larger count b_solved.
int randomize_unimodal_b(const UnimodalBudget& budget, double u);

// Largest perturbation of delta that provably leaves b_solved unchanged.
// Zero exactly when tau is zero.
double stability_radius(double alpha, double delta);

// Probability that the origin escapes the convex hull of b sign-symmetric
// points in d dimensions: 2^{-(b-1)} * sum_{k=0}^{d-1} C(b-1, k).
double wendel_miscoverage(int b, int d);

// Union bound for the rectangular hull: d * P(b; delta), capped at 1.
double rect_union_bound(int b, int d, double delta);

}  // namespace hulc
