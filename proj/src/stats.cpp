#include "hulc/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace hulc {

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("normal_quantile needs p in (0, 1)");
    }
    // AS 241, PPND16.
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                  3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -val : val;
}

namespace {

constexpr double kPivotTol = 1e-10;

// Gauss-Jordan inverse of a small symmetric positive definite matrix.
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
    const int p = static_cast<int>(a.size());
    std::vector<std::vector<double>> inv(p, std::vector<double>(p, 0.0));
    for (int i = 0; i < p; ++i) inv[i][i] = 1.0;
    for (int j = 0; j < p; ++j) {
        double piv = a[j][j];
        if (std::fabs(piv) < 1e-14) throw std::runtime_error("singular matrix");
        for (int k = 0; k < p; ++k) {
            a[j][k] /= piv;
            inv[j][k] /= piv;
        }
        for (int i = 0; i < p; ++i) {
            if (i == j) continue;
            double f = a[i][j];
            for (int k = 0; k < p; ++k) {
                a[i][k] -= f * a[j][k];
                inv[i][k] -= f * inv[j][k];
            }
        }
    }
    return inv;
}

}  // namespace

OlsFit ols_fit(const std::vector<std::vector<double>>& rows,
               const std::vector<double>& y) {
    const int n = static_cast<int>(rows.size());
    if (n == 0 || rows[0].empty()) throw std::invalid_argument("empty design");
    const int p = static_cast<int>(rows[0].size());
    if (static_cast<int>(y.size()) != n) {
        throw std::invalid_argument("design/response length mismatch");
    }

    std::vector<std::vector<double>> a(p, std::vector<double>(p, 0.0));
    std::vector<double> b(p, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) {
            b[j] += rows[i][j] * y[i];
            for (int k = j; k < p; ++k) a[j][k] += rows[i][j] * rows[i][k];
        }
    }
    for (int j = 0; j < p; ++j) {
        for (int k = 0; k < j; ++k) a[j][k] = a[k][j];
    }

    std::vector<double> scale(p);
    for (int j = 0; j < p; ++j) scale[j] = std::max(a[j][j], 1.0);

    // In-order elimination: a column whose pivot collapses is aliased by
    // earlier columns and gets dropped, mirroring lm()'s pivoting.
    OlsFit fit;
    fit.dropped.assign(p, false);
    for (int j = 0; j < p; ++j) {
        if (a[j][j] < kPivotTol * scale[j]) {
            fit.dropped[j] = true;
            for (int k = 0; k < p; ++k) {
                a[j][k] = 0.0;
                a[k][j] = 0.0;
            }
            b[j] = 0.0;
            continue;
        }
        for (int i = j + 1; i < p; ++i) {
            if (a[j][j] == 0.0) continue;
            double f = a[i][j] / a[j][j];
            if (f == 0.0) continue;
            for (int k = j; k < p; ++k) a[i][k] -= f * a[j][k];
            b[i] -= f * b[j];
        }
    }

    fit.coef.assign(p, 0.0);
    for (int j = p - 1; j >= 0; --j) {
        if (fit.dropped[j]) continue;
        double s = b[j];
        for (int k = j + 1; k < p; ++k) s -= a[j][k] * fit.coef[k];
        fit.coef[j] = s / a[j][j];
    }

    fit.residuals.resize(n);
    for (int i = 0; i < n; ++i) {
        double pred = 0.0;
        for (int j = 0; j < p; ++j) pred += rows[i][j] * fit.coef[j];
        fit.residuals[i] = y[i] - pred;
    }
    return fit;
}

double sandwich_variance(const std::vector<std::vector<double>>& rows,
                         const OlsFit& fit, int coef) {
    const int n = static_cast<int>(rows.size());
    const int p = static_cast<int>(rows[0].size());
    if (coef < 0 || coef >= p) throw std::invalid_argument("bad coefficient index");
    if (fit.dropped[coef]) {
        throw std::runtime_error("requested coefficient was dropped as aliased");
    }

    std::vector<int> kept;
    for (int j = 0; j < p; ++j) {
        if (!fit.dropped[j]) kept.push_back(j);
    }
    const int q = static_cast<int>(kept.size());

    std::vector<std::vector<double>> xtx(q, std::vector<double>(q, 0.0));
    std::vector<std::vector<double>> meat(q, std::vector<double>(q, 0.0));
    for (int i = 0; i < n; ++i) {
        const double e2 = fit.residuals[i] * fit.residuals[i];
        for (int a = 0; a < q; ++a) {
            const double xa = rows[i][kept[a]];
            for (int b = 0; b < q; ++b) {
                const double xb = rows[i][kept[b]];
                xtx[a][b] += xa * xb;
                meat[a][b] += e2 * xa * xb;
            }
        }
    }
    auto inv = invert(xtx);

    int pos = 0;
    while (kept[pos] != coef) ++pos;
    // var = row pos of (inv * meat * inv)
    double var = 0.0;
    for (int a = 0; a < q; ++a) {
        double t = 0.0;
        for (int b = 0; b < q; ++b) t += inv[pos][b] * meat[b][a];
        var += t * inv[a][pos];
    }
    return std::max(0.0, var);
}

double vec_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double vec_sd(const std::vector<double>& v) {
    const double m = vec_mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (static_cast<double>(v.size()) - 1.0));
}

}  // namespace hulc
