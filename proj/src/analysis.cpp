#include "evssta/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "evssta/errors.hpp"
#include "evssta/normal.hpp"

namespace evssta::analysis {

namespace {

std::size_t pick_nominal(const std::vector<graph::DelayParams>& delays) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < delays.size(); ++i) {
        const auto& a = delays[i];
        const auto& b = delays[best];
        if (a.mean > b.mean || (a.mean == b.mean && a.std > b.std)) {
            best = i;
        }
    }
    return best;
}

}  // namespace

AnalysisReport graph_delay_analysis(const graph::TimingGraph& g, const mc::McConfig& cfg,
                                    const AnalysisOptions& options) {
    cfg.validate();
    if (options.grid_steps < 2) {
        throw DomainError("graph_delay_analysis: grid_steps must be >= 2");
    }
    AnalysisReport r(graph::normalize_source_sink(g));
    r.order = options.order;
    r.paths = graph::enumerate_paths(r.graph, options.path_cap);
    r.covariance = graph::path_covariance(r.paths, r.graph);
    const std::size_t n = r.paths.size();
    for (const auto& p : r.paths.paths) {
        r.path_delays.push_back(graph::accumulated_delay_params(r.graph, p));
    }
    r.nominal_path = pick_nominal(r.path_delays);
    r.nominal = r.path_delays[r.nominal_path];
    if (!(r.nominal.std > 0.0)) {
        throw DomainError("graph_delay_analysis: the nominal path has zero delay variance");
    }
    const double mu0 = r.nominal.mean;
    const double sd0 = r.nominal.std;

    if (n == 1) {
        r.z = corrections::linspace(-6.0, 6.0, options.grid_steps);
        for (double z : r.z) {
            r.cdf.push_back(normal::std_normal_cdf(z));
            r.pdf.push_back(normal::std_normal_pdf(z) / sd0);
        }
        r.analytic = {mu0, sd0};
        r.gumbel_iid = r.analytic;
    } else {
        const auto params = gumbel::GumbelParams::from_count(static_cast<std::int64_t>(n));
        r.gumbel = params;
        // S and max|eps| straight from the matrix: distinct paths can be
        // fully correlated when they differ only in zero-variance edges.
        const auto data = r.covariance.data();
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    s += data[i * n + j];
                    r.max_abs_eps = std::max(r.max_abs_eps, std::abs(data[i * n + j]));
                }
            }
        }
        r.s = {s};
        const double lo = params.alpha() - 8.0 * params.beta();
        const double hi = params.alpha() + 16.0 * params.beta();
        const auto z = corrections::linspace(lo, hi, options.grid_steps);
        r.validity = corrections::validity_check(params, r.s, r.max_abs_eps, z, options.order,
                                                 options.smallness_threshold);
        auto grid = corrections::evaluate_grid(z, params, r.s, options.order);
        r.z = std::move(grid.z);
        r.cdf = std::move(grid.cdf);
        r.pdf = std::move(grid.pdf);
        for (double& f : r.pdf) {
            f /= sd0;
        }
        const auto m = corrections::corrected_moments(params, r.s, options.order);
        r.analytic = {mu0 + sd0 * m.mean, sd0 * m.std};
        const auto gm = gumbel::gumbel_moments(params);
        r.gumbel_iid = {mu0 + sd0 * gm.mean, sd0 * gm.std};
    }
    for (double z : r.z) {
        r.delay.push_back(mu0 + sd0 * z);
    }

    // Physical covariance of the path delays.
    std::vector<double> cov(n * n);
    std::vector<double> means(n);
    for (std::size_t i = 0; i < n; ++i) {
        means[i] = r.path_delays[i].mean;
        for (std::size_t j = 0; j < n; ++j) {
            cov[i * n + j] = i == j ? r.path_delays[i].std * r.path_delays[i].std
                                    : r.path_delays[i].std * r.path_delays[j].std * r.covariance(i, j);
        }
    }
    r.monte_carlo = mc::sample_multivariate_max(n, cov, cfg, means);
    r.mc_reps = cfg.reps;
    r.mc_seed = cfg.seed;
    return r;
}

nlohmann::json to_json(const corrections::ValidityReport& v) {
    return {
        {"smallness_ok", v.smallness_ok},
        {"max_abs_eps", v.max_abs_eps},
        {"threshold", v.threshold},
        {"cdf_monotone", v.cdf_monotone},
        {"cdf_bounded", v.cdf_bounded},
        {"pdf_nonnegative", v.pdf_nonnegative},
        {"flagged_points", v.flagged_points()},
        {"z_violations", v.z_violations},
        {"pdf_modes", v.pdf_modes},
    };
}

nlohmann::json to_json(const AnalysisReport& r) {
    constexpr std::size_t kMaxListedPaths = 100;
    nlohmann::json j;
    j["nodes"] = r.graph.node_count();
    j["edges"] = r.graph.edge_count();
    j["path_count"] = r.paths.size();
    j["order"] = std::string(corrections::to_string(r.order));
    if (r.paths.size() <= kMaxListedPaths) {
        nlohmann::json paths = nlohmann::json::array();
        for (std::size_t i = 0; i < r.paths.size(); ++i) {
            nlohmann::json names = nlohmann::json::array();
            for (std::size_t v : graph::path_nodes(r.graph, r.paths.paths[i])) {
                names.push_back(r.graph.node_name(v));
            }
            paths.push_back({{"nodes", names},
                             {"length", r.paths.lengths[i]},
                             {"mean", r.path_delays[i].mean},
                             {"std", r.path_delays[i].std}});
        }
        j["paths"] = paths;
    }
    j["nominal_path"] = r.nominal_path;
    j["nominal"] = {{"mean", r.nominal.mean}, {"std", r.nominal.std}};
    if (r.gumbel) {
        j["gumbel"] = {{"n", r.gumbel->n()}, {"alpha", r.gumbel->alpha()}, {"beta", r.gumbel->beta()}};
        j["correlation_sum"] = r.s.s;
    }
    j["max_abs_eps"] = r.max_abs_eps;
    if (r.validity) {
        j["validity"] = to_json(*r.validity);
    }
    j["analytic"] = {{"mean", r.analytic.mean}, {"std", r.analytic.std}};
    j["gumbel_iid"] = {{"mean", r.gumbel_iid.mean}, {"std", r.gumbel_iid.std}};
    j["monte_carlo"] = {{"mean", r.monte_carlo.mean},
                        {"std", r.monte_carlo.std},
                        {"standard_error", r.monte_carlo.standard_error()},
                        {"reps", r.mc_reps},
                        {"seed", r.mc_seed}};
    j["mean_gap"] = r.mean_gap();
    return j;
}

}  // namespace evssta::analysis
