#ifndef EVSSTA_TIMING_GRAPH_HPP
#define EVSSTA_TIMING_GRAPH_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

// Timing graph model and shared-edge path covariance.
//
// Delays live on edges: tau_e = mu_e + sigma_e xi_e with independent
// xi_e ~ N(0,1). Node delays can be expressed by splitting a node into an
// in/out pair joined by an edge; the parser does not do this automatically.
//
// Text format, one edge per line:
//     # comment
//     FROM TO MU SIGMA
// JSON format:
//     {"edges": [{"from": "a", "to": "b", "mu": 1.0, "sigma": 0.1}, ...]}

namespace evssta::graph {

struct EdgeSpec {
    std::string from;
    std::string to;
    double mu = 0.0;
    double sigma = 0.0;
};

struct Edge {
    std::size_t from;
    std::size_t to;
    double mu;
    double sigma;
};

// Directed acyclic graph without self-loops or parallel edges. Immutable.
class TimingGraph {
public:
    // Validates and builds. Throws DomainError (negative/non-finite delay
    // parameters, self-loop), DuplicateEdgeError or CycleError.
    static TimingGraph from_edges(std::span<const EdgeSpec> edges);

    [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    [[nodiscard]] const std::vector<std::string>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
    [[nodiscard]] const std::string& node_name(std::size_t v) const { return nodes_[v]; }
    [[nodiscard]] std::optional<std::size_t> find_node(std::string_view name) const;

    // Outgoing edge indices of v, ordered by target node name.
    [[nodiscard]] std::span<const std::size_t> out_edges(std::size_t v) const { return out_[v]; }
    [[nodiscard]] std::size_t in_degree(std::size_t v) const { return in_degree_[v]; }

    // Zero in-degree / zero out-degree nodes, ordered by name.
    [[nodiscard]] std::vector<std::size_t> sources() const;
    [[nodiscard]] std::vector<std::size_t> sinks() const;

    // Nodes in a topological order (Kahn, ties broken by name).
    [[nodiscard]] const std::vector<std::size_t>& topological_order() const noexcept { return topo_; }

    [[nodiscard]] std::vector<EdgeSpec> edge_specs() const;

    // Every edge carries the same sigma > 0, the delay model under which
    // path correlations reduce to shared-edge counts.
    [[nodiscard]] bool has_uniform_sigma() const noexcept;

private:
    TimingGraph() = default;

    std::vector<std::string> nodes_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::size_t> in_degree_;
    std::vector<std::size_t> topo_;
};

// Throws ParseError on malformed lines or self-loops, plus the errors of
// TimingGraph::from_edges.
TimingGraph parse_graph(std::string_view text);
TimingGraph parse_graph_json(std::string_view text);
// Dispatches on the .json extension.
TimingGraph load_graph(const std::filesystem::path& path);

std::string format_graph(const TimingGraph& g);

inline constexpr std::string_view kVirtualSource = "__source__";
inline constexpr std::string_view kVirtualSink = "__sink__";

// Adds a virtual source (sink) joined by zero-delay edges when the graph has
// several sources (sinks). Idempotent.
TimingGraph normalize_source_sink(const TimingGraph& g);

// Series composition of `copies` replicas of a single-source/single-sink
// block: the sink of replica k is merged with the source of replica k + 1.
TimingGraph make_cascade(const TimingGraph& block, int copies);

struct PathSet {
    // Edge indices in traversal order, source to sink.
    std::vector<std::vector<std::size_t>> paths;
    std::vector<std::size_t> lengths;

    [[nodiscard]] std::size_t size() const noexcept { return paths.size(); }
};

inline constexpr std::size_t kDefaultPathCap = 10000;

// All source-to-sink paths of a single-source/single-sink graph, depth
// first with successors visited in node-name order. Throws
// PathExplosionError once the count exceeds cap.
PathSet enumerate_paths(const TimingGraph& g, std::size_t cap = kDefaultPathCap);

std::vector<std::size_t> path_nodes(const TimingGraph& g, std::span<const std::size_t> path);

struct DelayParams {
    double mean;
    double std;
};

// mean = sum mu_e, std = sqrt(sum sigma_e^2)
DelayParams accumulated_delay_params(const TimingGraph& g, std::span<const std::size_t> path);

// Correlation matrix of standardized path delays eps_i.
class PathCovariance {
public:
    PathCovariance() = default;
    PathCovariance(std::size_t n, std::vector<double> data) : n_(n), data_(std::move(data)) {}

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// <eps_i eps_j>. Homogeneous graphs use |shared edges| / sqrt(L_i L_j);
// otherwise sum_{e shared} sigma_e^2 / (std_i std_j). Unit diagonal; a path
// with zero variance has zero correlation with every other path.
PathCovariance path_covariance(const PathSet& ps, const TimingGraph& g);

namespace ref {

// Serial reference of path_covariance.
PathCovariance path_covariance(const PathSet& ps, const TimingGraph& g);

}  // namespace ref

}  // namespace evssta::graph

#endif  // EVSSTA_TIMING_GRAPH_HPP
