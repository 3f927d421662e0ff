#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hulc/adaptive.hpp"
#include "hulc/hulc.hpp"
#include "hulc/simlab.hpp"
#include "hulc/splitmath.hpp"
#include "hulc/stats.hpp"
#include "hulc/unimodal.hpp"

using nlohmann::json;

namespace {

std::uint64_t resolve_seed(CLI::Option* seed_opt, std::uint64_t seed_value) {
    if (seed_opt->count() > 0) return seed_value;
    if (const char* env = std::getenv("HULC_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    std::random_device rd;
    std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::fprintf(stderr, "seed: %" PRIu64 "\n", s);
    return s;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << text;
}

json box_to_json(const hulc::ConfidenceBox& box) {
    json j;
    j["method"] = box.method;
    j["alpha"] = box.alpha;
    j["delta"] = box.delta_used;
    j["b_star"] = box.b_star;
    j["lo"] = box.lo;
    j["hi"] = box.hi;
    j["seed"] = box.seed;
    if (box.delta_hat) j["delta_hat"] = *box.delta_hat;
    if (box.delta_hat) j["delta_clipped"] = box.delta_clipped;
    if (box.inflation) j["inflation"] = *box.inflation;
    return j;
}

int cmd_btable(const std::vector<double>& alphas,
               const std::vector<double>& deltas, const std::string& format) {
    std::ostringstream out;
    if (format == "csv") {
        out << "delta,alpha,b\n";
        for (double d : deltas) {
            for (double a : alphas) {
                out << fmt(d) << "," << fmt(a) << ",";
                try {
                    out << hulc::solve_budget(a, d).b_solved;
                } catch (const std::exception&) {
                    out << "INF";
                }
                out << "\n";
            }
        }
    } else {
        out << "delta";
        for (double a : alphas) out << "\talpha=" << fmt(a);
        out << "\n";
        for (double d : deltas) {
            out << fmt(d);
            for (double a : alphas) {
                out << "\t";
                try {
                    out << hulc::solve_budget(a, d).b_solved;
                } catch (const std::exception&) {
                    out << "INF";
                }
            }
            out << "\n";
        }
    }
    std::cout << out.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hull-of-split-estimates confidence intervals"};
    app.require_subcommand(1);

    // btable
    auto* btable = app.add_subcommand("btable", "split-budget table");
    std::vector<double> bt_alpha{0.15, 0.1, 0.05};
    std::vector<double> bt_delta{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4};
    std::string bt_format = "text";
    btable->add_option("--alpha", bt_alpha, "miscoverage levels")
        ->capture_default_str();
    btable->add_option("--delta", bt_delta, "median-bias levels")
        ->capture_default_str();
    btable->add_option("--format", bt_format, "text|csv")
        ->check(CLI::IsMember({"text", "csv"}));

    // ci
    auto* ci = app.add_subcommand("ci", "confidence interval from a CSV file");
    std::string ci_input, ci_estimator = "mean", ci_method = "hulc";
    double ci_alpha = 0.05, ci_delta = 0.0, ci_t = 0.5;
    std::string ci_subsample_size = "auto";
    int ci_subsamples = 1000;
    double ci_delta_cap = 0.45;
    bool ci_inflate = false, ci_strict_cap = false;
    std::uint64_t ci_seed = 0;
    ci->add_option("--input", ci_input, "input CSV (header row)")->required();
    ci->add_option("--estimator", ci_estimator,
                   "mean|median|binom|ols:<k>|uniform-endpoint|sqmean|"
                   "isotonic:<x0>|max");
    ci->add_option("--method", ci_method, "hulc|adaptive|unimodal")
        ->check(CLI::IsMember({"hulc", "adaptive", "unimodal"}));
    ci->add_option("--alpha", ci_alpha)->capture_default_str();
    auto* ci_delta_opt = ci->add_option("--delta", ci_delta, "median bias");
    ci->add_option("--t", ci_t, "unimodal stretch factor")
        ->capture_default_str();
    ci->add_option("--subsample-size", ci_subsample_size,
                   "adaptive subsample size b, or 'auto' for floor(n^(2/3))");
    ci->add_option("--subsamples", ci_subsamples, "adaptive subsample count K")
        ->capture_default_str();
    ci->add_option("--delta-cap", ci_delta_cap)->capture_default_str();
    ci->add_flag("--strict-cap", ci_strict_cap,
                 "error instead of clipping delta-hat at the cap");
    ci->add_flag("--inflate", ci_inflate, "log(2)/m widening");
    auto* ci_seed_opt = ci->add_option("--seed", ci_seed);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte-Carlo coverage study");
    std::string sim_scenario, sim_method = "hulc", sim_out = "-";
    int sim_n = 100, sim_reps = 1000, sim_workers = 1;
    double sim_alpha = 0.05, sim_delta = 0.0, sim_t = 0.5;
    std::uint64_t sim_seed = 0;
    double sim_gamma = 0.0, sim_mu = 0.0, sim_df = 1.5, sim_p = 0.3,
           sim_x0 = 0.5;
    sim->add_option("--scenario", sim_scenario)->required();
    sim->add_option("--n", sim_n)->required();
    sim->add_option("--reps", sim_reps)->capture_default_str();
    sim->add_option("--alpha", sim_alpha)->capture_default_str();
    sim->add_option("--method", sim_method, "hulc|adaptive|unimodal|wald");
    sim->add_option("--out", sim_out, "output CSV path, '-' for stdout");
    sim->add_option("--workers", sim_workers)->capture_default_str();
    auto* sim_delta_opt = sim->add_option("--delta", sim_delta,
                                          "override the estimator's delta");
    sim->add_option("--t", sim_t)->capture_default_str();
    auto* sim_gamma_opt = sim->add_option("--gamma", sim_gamma);
    auto* sim_mu_opt = sim->add_option("--mu", sim_mu);
    auto* sim_df_opt = sim->add_option("--df", sim_df);
    auto* sim_p_opt = sim->add_option("--p", sim_p);
    auto* sim_x0_opt = sim->add_option("--x0", sim_x0);
    auto* sim_seed_opt = sim->add_option("--seed", sim_seed);

    // band
    auto* band = app.add_subcommand("band", "monotone step confidence band");
    std::string band_input, band_method = "adaptive", band_out = "-";
    int band_points = 25;
    double band_alpha = 0.05, band_t = 0.5;
    std::uint64_t band_seed = 0;
    band->add_option("--input", band_input, "x,y CSV")->required();
    band->add_option("--points", band_points)->capture_default_str();
    band->add_option("--alpha", band_alpha)->capture_default_str();
    band->add_option("--method", band_method, "adaptive|unimodal")
        ->check(CLI::IsMember({"adaptive", "unimodal"}));
    band->add_option("--t", band_t)->capture_default_str();
    band->add_option("--out", band_out);
    auto* band_seed_opt = band->add_option("--seed", band_seed);

    // regen-targets
    auto* regen = app.add_subcommand(
        "regen-targets", "re-derive tabulated slope targets by large-sample "
                         "least squares");
    long long regen_draws = 10'000'000;
    std::uint64_t regen_seed = 0;
    regen->add_option("--draws", regen_draws)->capture_default_str();
    auto* regen_seed_opt = regen->add_option("--seed", regen_seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (btable->parsed()) {
            return cmd_btable(bt_alpha, bt_delta, bt_format);
        }

        if (ci->parsed()) {
            std::uint64_t seed = resolve_seed(ci_seed_opt, ci_seed);
            hulc::Dataset data = hulc::read_csv(ci_input);
            hulc::EstimatorSpec est = hulc::estimator_by_name(ci_estimator);
            hulc::ConfidenceBox box;
            json extra = json::object();
            if (ci_method == "hulc") {
                hulc::HulcOptions opts;
                opts.inflate = ci_inflate;
                box = hulc::hulc_interval(data, est, ci_alpha, ci_delta, seed,
                                          opts);
            } else if (ci_method == "adaptive") {
                hulc::AdaptiveOptions opts;
                if (ci_subsample_size != "auto") {
                    opts.subsample_size = std::stoi(ci_subsample_size);
                }
                opts.subsamples = ci_subsamples;
                opts.delta_cap = ci_delta_cap;
                opts.delta_cap_strict = ci_strict_cap;
                opts.inflate = ci_inflate;
                box = hulc::adaptive_hulc(data, est, ci_alpha, opts, seed);
                extra["subsample_size"] =
                    opts.subsample_size > 0
                        ? opts.subsample_size
                        : hulc::auto_subsample_size(data.n_rows());
                extra["subsamples"] = opts.subsamples;
            } else {  // unimodal
                double d = ci_delta_opt->count() > 0 ? ci_delta : 0.5;
                box = hulc::unimodal_hulc(data, est, ci_alpha, ci_t, d, seed);
                extra["t"] = ci_t;
            }
            json j = box_to_json(box);
            j["estimator"] = est.name;
            j["n"] = data.n_rows();
            j.update(extra);
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (sim->parsed()) {
            std::map<std::string, double> params;
            if (sim_gamma_opt->count()) params["gamma"] = sim_gamma;
            if (sim_mu_opt->count()) params["mu"] = sim_mu;
            if (sim_df_opt->count()) params["df"] = sim_df;
            if (sim_p_opt->count()) params["p"] = sim_p;
            if (sim_x0_opt->count()) params["x0"] = sim_x0;
            hulc::Scenario scenario;
            try {
                scenario = hulc::get_scenario(sim_scenario, params);
            } catch (const std::invalid_argument& e) {
                std::fprintf(stderr, "error: %s\n", e.what());
                return 2;
            }
            hulc::MethodDescriptor method = hulc::method_by_name(sim_method);
            method.t = sim_t;
            if (sim_delta_opt->count()) {
                method.delta = sim_delta;
                method.use_recommended_delta = false;
            }
            if (method.kind == hulc::MethodDescriptor::Kind::Wald &&
                scenario.baseline == hulc::BaselineKind::None) {
                scenario.baseline = hulc::BaselineKind::WaldMean;
            }
            std::uint64_t seed = resolve_seed(sim_seed_opt, sim_seed);
            hulc::SimReport rep =
                hulc::run_coverage(scenario, method, sim_n, sim_reps,
                                   sim_alpha, seed, sim_workers);
            std::ostringstream csv;
            csv << "scenario,n,alpha,method,reps,coverage,coverage_se,"
                   "mean_width,width_ratio,failures\n";
            csv << sim_scenario << "," << sim_n << "," << fmt(sim_alpha) << ","
                << sim_method << "," << rep.replications << ","
                << fmt(rep.coverage) << "," << fmt(rep.coverage_se) << ","
                << fmt(rep.mean_width) << ","
                << (rep.width_ratio >= 0.0 ? fmt(rep.width_ratio) : "NA")
                << "," << rep.failures << "\n";
            write_text(sim_out, csv.str());
            return 0;
        }

        if (band->parsed()) {
            std::uint64_t seed = resolve_seed(band_seed_opt, band_seed);
            hulc::Dataset data = hulc::read_csv(band_input);
            const int n = data.n_rows();
            const auto& xs = data.column(0);
            double xmin = *std::min_element(xs.begin(), xs.end());
            double xmax = *std::max_element(xs.begin(), xs.end());
            const double margin = (xmax - xmin) / std::sqrt(double(n));
            const double lo = xmin + margin, hi = xmax - margin;
            const int k = band_points;
            if (k < 1) throw std::invalid_argument("need at least one point");
            std::vector<double> points(k);
            for (int i = 0; i < k; ++i) {
                points[i] = k == 1 ? (lo + hi) / 2.0
                                   : lo + (hi - lo) * i / (k - 1);
            }
            hulc::MethodDescriptor method = hulc::method_by_name(band_method);
            method.t = band_t;
            std::vector<hulc::Interval> per_point =
                hulc::band_intervals(data, points, band_alpha, method, seed);
            hulc::StepBand sb = hulc::monotone_band(points, per_point);
            std::ostringstream csv;
            csv << "x,lower,upper\n";
            for (int i = 0; i < k; ++i) {
                csv << fmt(sb.x[i]) << "," << fmt(sb.lower[i]) << ","
                    << fmt(sb.upper[i]) << "\n";
            }
            write_text(band_out, csv.str());
            return 0;
        }

        if (regen->parsed()) {
            std::uint64_t seed = resolve_seed(regen_seed_opt, regen_seed);
            std::printf("target,value\n");
            for (double gamma : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                hulc::RngStream rng = hulc::RngStream::derive(
                    seed, "regen-lm", static_cast<std::uint64_t>(gamma * 100));
                // Streaming simple regression: slope of Y on X with intercept.
                double sx = 0, sy = 0, sxx = 0, sxy = 0;
                for (long long i = 0; i < regen_draws; ++i) {
                    double x = 10.0 * rng.uniform();
                    double xi = rng.normal();
                    double y = 1.0 + 2.0 * x + gamma * std::pow(x, 1.7) +
                               std::exp(gamma * x) * xi;
                    sx += x;
                    sy += y;
                    sxx += x * x;
                    sxy += x * y;
                }
                double nn = static_cast<double>(regen_draws);
                double slope = (sxy - sx * sy / nn) / (sxx - sx * sx / nn);
                std::printf("lm-gamma(%g),%.6f\n", gamma, slope);
            }
            {
                // First slope of the 7x7 (intercept + 6 covariates) normal
                // equations, accumulated streaming.
                hulc::RngStream rng = hulc::RngStream::derive(seed, "regen-mr");
                const int p = 7;
                std::vector<std::vector<double>> xtx(
                    p, std::vector<double>(p, 0.0));
                std::vector<double> xty(p, 0.0);
                const int chunk = 4096;
                long long done = 0;
                while (done < regen_draws) {
                    int m = static_cast<int>(
                        std::min<long long>(chunk, regen_draws - done));
                    hulc::Dataset ds = hulc::gen_multireg(m, rng);
                    for (int i = 0; i < m; ++i) {
                        double row[p];
                        row[0] = 1.0;
                        for (int c = 0; c < 6; ++c) row[c + 1] = ds.cols[c][i];
                        double y = ds.cols[6][i];
                        for (int a = 0; a < p; ++a) {
                            for (int b = a; b < p; ++b) {
                                xtx[a][b] += row[a] * row[b];
                            }
                            xty[a] += row[a] * y;
                        }
                    }
                    done += m;
                }
                for (int a = 0; a < p; ++a) {
                    for (int b = 0; b < a; ++b) xtx[a][b] = xtx[b][a];
                }
                // Gaussian elimination with partial pivoting.
                for (int c = 0; c < p; ++c) {
                    int piv = c;
                    for (int r = c + 1; r < p; ++r) {
                        if (std::fabs(xtx[r][c]) > std::fabs(xtx[piv][c])) {
                            piv = r;
                        }
                    }
                    std::swap(xtx[c], xtx[piv]);
                    std::swap(xty[c], xty[piv]);
                    for (int r = c + 1; r < p; ++r) {
                        double f = xtx[r][c] / xtx[c][c];
                        for (int cc = c; cc < p; ++cc) {
                            xtx[r][cc] -= f * xtx[c][cc];
                        }
                        xty[r] -= f * xty[c];
                    }
                }
                std::vector<double> beta(p, 0.0);
                for (int c = p - 1; c >= 0; --c) {
                    double v = xty[c];
                    for (int cc = c + 1; cc < p; ++cc) {
                        v -= xtx[c][cc] * beta[cc];
                    }
                    beta[c] = v / xtx[c][c];
                }
                std::printf("multireg-slope1,%.6f\n", beta[1]);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
