#include "hulc/splitmath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hulc {

namespace {

void check_delta_closed(double delta) {
    if (!(delta >= 0.0 && delta <= 0.5)) {
        throw std::domain_error("delta must lie in [0, 1/2], got " +
                                std::to_string(delta));
    }
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("alpha must lie in (0, 1), got " +
                                std::to_string(alpha));
    }
}

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

}  // namespace

double miscoverage_p(int b, double delta) {
    if (b < 1) throw std::domain_error("split count must be >= 1");
    check_delta_closed(delta);
    // Sum of two positive powers: no cancellation, stable up to B ~ 200+.
    double p = std::pow(0.5 - delta, b) + std::pow(0.5 + delta, b);
    return clamp01(p);
}

double unimodal_q(int b, double t, double delta) {
    if (b < 1) throw std::domain_error("split count must be >= 1");
    if (!(t >= 0.0)) throw std::domain_error("stretch t must be >= 0");
    check_delta_closed(delta);
    double q = miscoverage_p(b, delta) * std::pow(1.0 + t, 1 - b);
    return clamp01(q);
}

SplitBudget solve_budget(double alpha, double delta) {
    check_alpha(alpha);
    check_delta_closed(delta);
    if (delta >= 0.5) {
        throw std::domain_error(
            "delta = 1/2 requires infinitely many splits; use the unimodal "
            "construction instead");
    }

    // Start just below the known lower bound and walk up. B stays modest
    // (< 1e4) for any delta <= 0.499.
    int b = std::max(
        1, static_cast<int>(std::ceil(std::log(2.0 / alpha) / std::log(2.0))) - 1);
    while (miscoverage_p(b, delta) > alpha) {
        ++b;
        if (b > 1000000) throw std::runtime_error("split-count search diverged");
    }

    SplitBudget out;
    out.alpha = alpha;
    out.delta = delta;
    out.b_solved = b;
    out.p_at_b = miscoverage_p(b, delta);
    out.p_at_b_minus_1 = b > 1 ? miscoverage_p(b - 1, delta) : 1.0;
    out.tau = (alpha - out.p_at_b) / (out.p_at_b_minus_1 - out.p_at_b);
    return out;
}

int randomize_b(const SplitBudget& budget, double u) {
    return u <= budget.tau ? budget.b_solved - 1 : budget.b_solved;
}

UnimodalBudget solve_unimodal_budget(double alpha, double t, double delta) {
    check_alpha(alpha);
    check_delta_closed(delta);
    if (!(t >= 0.0)) throw std::domain_error("stretch t must be >= 0");
    if (t == 0.0 && delta >= 0.5) {
        throw std::domain_error(
            "t = 0 with delta = 1/2 admits no finite split count");
    }

    int b = 1;
    while (unimodal_q(b, t, delta) > alpha) {
        ++b;
        if (b > 1000000) throw std::runtime_error("split-count search diverged");
    }

    UnimodalBudget out;
    out.alpha = alpha;
    out.t = t;
    out.delta = delta;
    out.b_solved = b;
    out.q_at_b = unimodal_q(b, t, delta);
    out.q_at_b_minus_1 = b > 1 ? unimodal_q(b - 1, t, delta) : 1.0;
    if (b == 1) {
        // Q(1) <= alpha can only happen at the alpha ~ 1 boundary; there is
        // no smaller split count to randomize toward.
        out.eta = 1.0;
    } else {
        out.eta = (out.q_at_b_minus_1 - alpha) / (out.q_at_b_minus_1 - out.q_at_b);
    }
    return out;
}

int randomize_unimodal_b(const UnimodalBudget& budget, double u) {
    if (budget.b_solved == 1) return 1;
    return u <= budget.eta ? budget.b_solved : budget.b_solved - 1;
}

double stability_radius(double alpha, double delta) {
    SplitBudget budget = solve_budget(alpha, delta);
    const int b = budget.b_solved;
    if (delta == 0.0) {
        // Quadratic-form radius for the median-unbiased case.
        double c = 2.0 / (static_cast<double>(b) * (b - 1)) *
                   (alpha / budget.p_at_b - 1.0);
        return std::max(0.0, c);
    }
    double r1 = std::pow(alpha / budget.p_at_b, 1.0 / b);
    double r2 = std::pow(budget.p_at_b_minus_1 / alpha, 1.0 / b);
    return std::max(0.0, 0.5 * (std::min(r1, r2) - 1.0));
}

double wendel_miscoverage(int b, int d) {
    if (d < 1) throw std::domain_error("dimension must be >= 1");
    if (b <= d) throw std::domain_error("need at least d + 1 points");
    long double sum = 0.0L;
    long double binom = 1.0L;  // C(b-1, 0)
    for (int k = 0; k < d; ++k) {
        sum += binom;
        binom = binom * (b - 1 - k) / (k + 1);
    }
    long double p = sum * std::pow(0.5L, b - 1);
    return clamp01(static_cast<double>(p));
}

double rect_union_bound(int b, int d, double delta) {
    if (d < 1) throw std::domain_error("dimension must be >= 1");
    return clamp01(d * miscoverage_p(b, delta));
}

}  // namespace hulc
