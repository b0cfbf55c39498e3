#ifndef EVSSTA_ANALYSIS_HPP
#define EVSSTA_ANALYSIS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "json.hpp"

#include "evssta/corrections.hpp"
#include "evssta/montecarlo.hpp"
#include "evssta/timing_graph.hpp"

namespace evssta::analysis {

struct AnalysisOptions {
    corrections::Order order = corrections::Order::Complete;
    std::size_t path_cap = graph::kDefaultPathCap;
    std::size_t grid_steps = 601;
    double smallness_threshold = corrections::kDefaultSmallnessThreshold;
};

struct AnalysisReport {
    explicit AnalysisReport(graph::TimingGraph normalized) : graph(std::move(normalized)) {}

    graph::TimingGraph graph;  // normalized
    graph::PathSet paths;
    std::vector<graph::DelayParams> path_delays;
    graph::PathCovariance covariance;
    corrections::Order order = corrections::Order::Complete;

    // Scale used to standardize path delays: the path with the largest
    // mean (ties: largest std).
    std::size_t nominal_path = 0;
    graph::DelayParams nominal{};

    // Present when more than one path exists.
    std::optional<gumbel::GumbelParams> gumbel;
    corrections::CorrelationSum s{};
    double max_abs_eps = 0.0;
    std::optional<corrections::ValidityReport> validity;

    // Standardized grid and the corresponding delay axis.
    std::vector<double> z;
    std::vector<double> delay;
    std::vector<double> cdf;
    std::vector<double> pdf;  // density per unit delay

    corrections::Moments analytic{};   // in delay units
    corrections::Moments gumbel_iid{}; // uncorrected Gumbel, delay units
    mc::McResult monte_carlo;
    std::int64_t mc_reps = 0;
    std::uint64_t mc_seed = 0;

    [[nodiscard]] double mean_gap() const noexcept { return analytic.mean - monte_carlo.mean; }
};

// Normalizes the graph, enumerates paths, builds the covariance, evaluates
// the corrected law of the maximum under the standardized-IID approximation
// and cross-checks it with a Monte Carlo run over the actual correlated path
// delays. A single path bypasses the corrections: its delay law is exact.
AnalysisReport graph_delay_analysis(const graph::TimingGraph& g, const mc::McConfig& cfg,
                                    const AnalysisOptions& options = {});

nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const corrections::ValidityReport& report);

}  // namespace evssta::analysis

#endif  // EVSSTA_ANALYSIS_HPP
