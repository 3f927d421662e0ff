#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hulc/adaptive.hpp"
#include "hulc/hulc.hpp"
#include "hulc/simlab.hpp"
#include "hulc/splitmath.hpp"
#include "hulc/stats.hpp"
#include "hulc/unimodal.hpp"

namespace py = pybind11;

namespace {

py::dict box_to_dict(const hulc::ConfidenceBox& box) {
    py::dict d;
    d["method"] = box.method;
    d["alpha"] = box.alpha;
    d["delta"] = box.delta_used;
    d["b_star"] = box.b_star;
    d["lo"] = box.lo;
    d["hi"] = box.hi;
    d["seed"] = box.seed;
    if (box.delta_hat) {
        d["delta_hat"] = *box.delta_hat;
        d["delta_clipped"] = box.delta_clipped;
    }
    if (box.inflation) d["inflation"] = *box.inflation;
    return d;
}

hulc::Dataset regression_dataset(
    const std::vector<std::vector<double>>& x_rows,
    const std::vector<double>& y) {
    if (x_rows.size() != y.size() || y.empty()) {
        throw std::invalid_argument("x and y must have equal nonzero length");
    }
    const std::size_t p = x_rows.front().size();
    hulc::Dataset ds;
    ds.cols.assign(p + 1, {});
    for (std::size_t c = 0; c < p; ++c) {
        ds.names.push_back("x" + std::to_string(c + 1));
        ds.covariates.push_back(static_cast<int>(c));
    }
    ds.names.push_back("y");
    ds.response = static_cast<int>(p);
    for (std::size_t i = 0; i < x_rows.size(); ++i) {
        if (x_rows[i].size() != p) {
            throw std::invalid_argument("ragged design matrix");
        }
        for (std::size_t c = 0; c < p; ++c) ds.cols[c].push_back(x_rows[i][c]);
        ds.cols[p].push_back(y[i]);
    }
    ds.validate();
    return ds;
}

}  // namespace

PYBIND11_MODULE(_hulc, m) {
    m.doc() = "Confidence intervals from hulls of split estimates";

    m.def("miscoverage", &hulc::miscoverage_p, py::arg("b"), py::arg("delta"),
          "Hull miscoverage (1/2 - delta)^B + (1/2 + delta)^B");
    m.def("unimodal_miscoverage", &hulc::unimodal_q, py::arg("b"),
          py::arg("t"), py::arg("delta"));
    m.def(
        "solve_budget",
        [](double alpha, double delta) {
            auto b = hulc::solve_budget(alpha, delta);
            py::dict d;
            d["b"] = b.b_solved;
            d["tau"] = b.tau;
            d["p_at_b"] = b.p_at_b;
            d["p_at_b_minus_1"] = b.p_at_b_minus_1;
            return d;
        },
        py::arg("alpha"), py::arg("delta") = 0.0);
    m.def("stability_radius", &hulc::stability_radius, py::arg("alpha"),
          py::arg("delta"));
    m.def("wendel_miscoverage", &hulc::wendel_miscoverage, py::arg("b"),
          py::arg("d"));
    m.def("normal_quantile", &hulc::normal_quantile, py::arg("p"));
    m.def(
        "pava",
        [](const std::vector<double>& v,
           const std::optional<std::vector<double>>& w) {
            return w ? hulc::pava(v, *w) : hulc::pava(v);
        },
        py::arg("values"), py::arg("weights") = py::none(),
        "Isotonic least-squares fit (pool-adjacent-violators)");

    m.def(
        "ci",
        [](const std::vector<double>& values, const std::string& estimator,
           const std::string& method, double alpha, double delta, double t,
           std::uint64_t seed) {
            hulc::Dataset data = hulc::Dataset::univariate(values);
            hulc::EstimatorSpec est = hulc::estimator_by_name(estimator);
            hulc::ConfidenceBox box;
            if (method == "hulc") {
                box = hulc::hulc_interval(data, est, alpha, delta, seed);
            } else if (method == "adaptive") {
                box = hulc::adaptive_hulc(data, est, alpha, {}, seed);
            } else if (method == "unimodal") {
                box = hulc::unimodal_hulc(data, est, alpha, t, delta, seed);
            } else {
                throw std::invalid_argument("method must be hulc|adaptive|unimodal");
            }
            return box_to_dict(box);
        },
        py::arg("values"), py::arg("estimator") = "mean",
        py::arg("method") = "hulc", py::arg("alpha") = 0.05,
        py::arg("delta") = 0.0, py::arg("t") = 0.5, py::arg("seed") = 0);

    m.def(
        "ci_regression",
        [](const std::vector<std::vector<double>>& x,
           const std::vector<double>& y, int coefficient, double alpha,
           double delta, std::uint64_t seed) {
            hulc::Dataset data = regression_dataset(x, y);
            hulc::EstimatorSpec est = hulc::ols_estimator(coefficient, true);
            return box_to_dict(
                hulc::hulc_interval(data, est, alpha, delta, seed));
        },
        py::arg("x"), py::arg("y"), py::arg("coefficient") = 1,
        py::arg("alpha") = 0.05, py::arg("delta") = 0.0, py::arg("seed") = 0);

    m.def(
        "estimate_delta",
        [](const std::vector<double>& values, const std::string& estimator,
           int subsample_size, int subsamples, std::uint64_t seed) {
            hulc::Dataset data = hulc::Dataset::univariate(values);
            hulc::EstimatorSpec est = hulc::estimator_by_name(estimator);
            int b = subsample_size > 0 ? subsample_size
                                       : hulc::auto_subsample_size(data.n_rows());
            auto de = hulc::estimate_delta(data, est, b, subsamples, seed);
            py::dict d;
            d["delta_hat"] = de.delta_hat;
            d["l_n_zero"] = de.l_n_zero;
            d["subsample_size"] = de.subsample_size;
            d["subsample_count"] = de.subsample_count;
            return d;
        },
        py::arg("values"), py::arg("estimator") = "mean",
        py::arg("subsample_size") = 0, py::arg("subsamples") = 1000,
        py::arg("seed") = 0);

    m.def(
        "monotone_band",
        [](const std::vector<double>& x, const std::vector<double>& lower,
           const std::vector<double>& upper) {
            if (lower.size() != x.size() || upper.size() != x.size()) {
                throw std::invalid_argument("length mismatch");
            }
            std::vector<hulc::Interval> iv(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                iv[i] = {lower[i], upper[i]};
            }
            auto band = hulc::monotone_band(x, iv);
            return py::make_tuple(band.x, band.lower, band.upper);
        },
        py::arg("x"), py::arg("lower"), py::arg("upper"));

    m.def(
        "band",
        [](const std::vector<double>& x, const std::vector<double>& y,
           const std::vector<double>& points, double alpha,
           const std::string& method, double t, std::uint64_t seed) {
            hulc::Dataset data = hulc::Dataset::xy(x, y);
            hulc::MethodDescriptor md = hulc::method_by_name(method);
            md.t = t;
            auto iv = hulc::band_intervals(data, points, alpha, md, seed);
            auto band = hulc::monotone_band(points, iv);
            return py::make_tuple(band.x, band.lower, band.upper);
        },
        py::arg("x"), py::arg("y"), py::arg("points"),
        py::arg("alpha") = 0.05, py::arg("method") = "adaptive",
        py::arg("t") = 0.5, py::arg("seed") = 0);
}
