#pragma once

#include <vector>

namespace hulc {

// Inverse standard normal CDF (Wichura's AS 241, double precision).
double normal_quantile(double p);

// Least-squares fit with R-style handling of rank deficiency: when a
// pivot collapses, the offending (later) column is dropped and its
// coefficient reported as zero.
struct OlsFit {
    std::vector<double> coef;      // one per design column, dropped -> 0
    std::vector<bool> dropped;     // which columns were aliased away
    std::vector<double> residuals;
};

// rows: design matrix, row-major, p columns each.
OlsFit ols_fit(const std::vector<std::vector<double>>& rows,
               const std::vector<double>& y);

// Heteroskedasticity-robust variance of one coefficient:
// [(X'X)^-1 X' diag(e^2) X (X'X)^-1]_{kk}, computed on the kept columns.
double sandwich_variance(const std::vector<std::vector<double>>& rows,
                         const OlsFit& fit, int coef);

double vec_mean(const std::vector<double>& v);
double vec_sd(const std::vector<double>& v);  // sample SD, n-1 denominator

}  // namespace hulc
