#include "evssta/timing_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>

#include "json.hpp"

#include "evssta/errors.hpp"
#include "evssta/io.hpp"

namespace evssta::graph {

namespace {

bool valid_delay(double x) {
    return std::isfinite(x) && x >= 0.0;
}

std::optional<double> parse_number(std::string_view token) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        return std::nullopt;
    }
    return value;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) {
            ++pos;
        }
        const std::size_t start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) {
            ++pos;
        }
        if (pos > start) {
            tokens.push_back(line.substr(start, pos - start));
        }
    }
    return tokens;
}

std::string unique_name(const TimingGraph& g, std::string_view base) {
    std::string name(base);
    for (int suffix = 1; g.find_node(name); ++suffix) {
        name = std::string(base) + std::to_string(suffix);
    }
    return name;
}

}  // namespace

TimingGraph TimingGraph::from_edges(std::span<const EdgeSpec> specs) {
    TimingGraph g;
    const auto intern = [&g](const std::string& name) {
        auto [it, inserted] = g.index_.try_emplace(name, g.nodes_.size());
        if (inserted) {
            g.nodes_.push_back(name);
        }
        return it->second;
    };

    std::unordered_map<std::size_t, std::vector<std::size_t>> seen_targets;
    for (const EdgeSpec& spec : specs) {
        if (spec.from.empty() || spec.to.empty()) {
            throw DomainError("timing graph: empty node name");
        }
        if (spec.from == spec.to) {
            throw DomainError("timing graph: self-loop on node '" + spec.from + "'");
        }
        if (!valid_delay(spec.mu) || !valid_delay(spec.sigma)) {
            throw DomainError("timing graph: edge " + spec.from + " -> " + spec.to +
                              " needs finite mu >= 0 and sigma >= 0");
        }
        const std::size_t from = intern(spec.from);
        const std::size_t to = intern(spec.to);
        auto& targets = seen_targets[from];
        if (std::find(targets.begin(), targets.end(), to) != targets.end()) {
            throw DuplicateEdgeError("timing graph: duplicate edge " + spec.from + " -> " + spec.to);
        }
        targets.push_back(to);
        g.edges_.push_back({from, to, spec.mu, spec.sigma});
    }

    const std::size_t n = g.nodes_.size();
    g.out_.assign(n, {});
    g.in_degree_.assign(n, 0);
    for (std::size_t e = 0; e < g.edges_.size(); ++e) {
        g.out_[g.edges_[e].from].push_back(e);
        ++g.in_degree_[g.edges_[e].to];
    }
    for (auto& out : g.out_) {
        std::sort(out.begin(), out.end(), [&g](std::size_t a, std::size_t b) {
            return g.nodes_[g.edges_[a].to] < g.nodes_[g.edges_[b].to];
        });
    }

    // Kahn's algorithm; ready nodes are taken in name order.
    const auto by_name = [&g](std::size_t a, std::size_t b) { return g.nodes_[a] > g.nodes_[b]; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_name)> ready(by_name);
    std::vector<std::size_t> remaining = g.in_degree_;
    for (std::size_t v = 0; v < n; ++v) {
        if (remaining[v] == 0) {
            ready.push(v);
        }
    }
    while (!ready.empty()) {
        const std::size_t v = ready.top();
        ready.pop();
        g.topo_.push_back(v);
        for (std::size_t e : g.out_[v]) {
            if (--remaining[g.edges_[e].to] == 0) {
                ready.push(g.edges_[e].to);
            }
        }
    }
    if (g.topo_.size() != n) {
        for (std::size_t v = 0; v < n; ++v) {
            if (remaining[v] > 0) {
                throw CycleError("timing graph: cycle through node '" + g.nodes_[v] + "'");
            }
        }
    }
    return g;
}

std::optional<std::size_t> TimingGraph::find_node(std::string_view name) const {
    const auto it = index_.find(std::string(name));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<std::size_t> TimingGraph::sources() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
        if (in_degree_[v] == 0) {
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end(), [this](auto a, auto b) { return nodes_[a] < nodes_[b]; });
    return out;
}

std::vector<std::size_t> TimingGraph::sinks() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
        if (out_[v].empty()) {
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end(), [this](auto a, auto b) { return nodes_[a] < nodes_[b]; });
    return out;
}

std::vector<EdgeSpec> TimingGraph::edge_specs() const {
    std::vector<EdgeSpec> specs;
    specs.reserve(edges_.size());
    for (const Edge& e : edges_) {
        specs.push_back({nodes_[e.from], nodes_[e.to], e.mu, e.sigma});
    }
    return specs;
}

bool TimingGraph::has_uniform_sigma() const noexcept {
    if (edges_.empty() || !(edges_.front().sigma > 0.0)) {
        return false;
    }
    return std::all_of(edges_.begin(), edges_.end(),
                       [s = edges_.front().sigma](const Edge& e) { return e.sigma == s; });
}

TimingGraph parse_graph(std::string_view text) {
    std::vector<EdgeSpec> specs;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        const auto tokens = split_whitespace(line);
        if (tokens.empty() || tokens.front().front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        if (tokens.size() != 4) {
            throw ParseError("expected 'FROM TO MU SIGMA', got " + std::to_string(tokens.size()) +
                                 " fields",
                             line_no);
        }
        const auto mu = parse_number(tokens[2]);
        const auto sigma = parse_number(tokens[3]);
        if (!mu || !valid_delay(*mu)) {
            throw ParseError("MU must be a finite decimal >= 0: '" + std::string(tokens[2]) + "'", line_no);
        }
        if (!sigma || !valid_delay(*sigma)) {
            throw ParseError("SIGMA must be a finite decimal >= 0: '" + std::string(tokens[3]) + "'",
                             line_no);
        }
        if (tokens[0] == tokens[1]) {
            throw ParseError("self-loop on node '" + std::string(tokens[0]) + "'", line_no);
        }
        specs.push_back({std::string(tokens[0]), std::string(tokens[1]), *mu, *sigma});
        if (end == text.size()) break;
    }
    return TimingGraph::from_edges(specs);
}

TimingGraph parse_graph_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 1);
    }
    if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array()) {
        throw ParseError("expected an object with an \"edges\" array", 1);
    }
    std::vector<EdgeSpec> specs;
    std::size_t index = 0;
    for (const auto& item : doc["edges"]) {
        ++index;
        const bool ok = item.is_object() && item.contains("from") && item["from"].is_string() &&
                        item.contains("to") && item["to"].is_string() && item.contains("mu") &&
                        item["mu"].is_number() && item.contains("sigma") && item["sigma"].is_number();
        if (!ok) {
            throw ParseError("edge " + std::to_string(index) +
                                 " needs string from/to and numeric mu/sigma",
                             index);
        }
        EdgeSpec spec{item["from"].get<std::string>(), item["to"].get<std::string>(),
                      item["mu"].get<double>(), item["sigma"].get<double>()};
        if (!valid_delay(spec.mu) || !valid_delay(spec.sigma)) {
            throw ParseError("edge " + std::to_string(index) + ": mu and sigma must be >= 0", index);
        }
        if (spec.from == spec.to) {
            throw ParseError("self-loop on node '" + spec.from + "'", index);
        }
        specs.push_back(std::move(spec));
    }
    return TimingGraph::from_edges(specs);
}

TimingGraph load_graph(const std::filesystem::path& path) {
    const std::string text = io::read_text(path);
    if (path.extension() == ".json") {
        return parse_graph_json(text);
    }
    return parse_graph(text);
}

std::string format_graph(const TimingGraph& g) {
    std::ostringstream out;
    out << "# FROM TO MU SIGMA\n";
    for (const EdgeSpec& e : g.edge_specs()) {
        out << e.from << ' ' << e.to << ' ' << io::format_double(e.mu) << ' '
            << io::format_double(e.sigma) << '\n';
    }
    return out.str();
}

TimingGraph normalize_source_sink(const TimingGraph& g) {
    const auto sources = g.sources();
    const auto sinks = g.sinks();
    std::vector<EdgeSpec> specs = g.edge_specs();
    if (sources.size() > 1) {
        const std::string name = unique_name(g, kVirtualSource);
        for (std::size_t s : sources) {
            specs.push_back({name, g.node_name(s), 0.0, 0.0});
        }
    }
    if (sinks.size() > 1) {
        const std::string name = unique_name(g, kVirtualSink);
        for (std::size_t t : sinks) {
            specs.push_back({g.node_name(t), name, 0.0, 0.0});
        }
    }
    if (specs.size() == g.edge_count()) {
        return g;
    }
    return TimingGraph::from_edges(specs);
}

TimingGraph make_cascade(const TimingGraph& block, int copies) {
    if (copies < 1) {
        throw DomainError("make_cascade: copies must be >= 1");
    }
    const auto sources = block.sources();
    const auto sinks = block.sinks();
    if (sources.size() != 1 || sinks.size() != 1) {
        throw DomainError("make_cascade: block needs a single source and sink");
    }
    const auto replica_name = [&](std::size_t v, int k) -> std::string {
        if (k > 0 && v == sources.front()) {
            return block.node_name(sinks.front()) + "_" + std::to_string(k - 1);
        }
        return block.node_name(v) + "_" + std::to_string(k);
    };
    std::vector<EdgeSpec> specs;
    specs.reserve(block.edge_count() * static_cast<std::size_t>(copies));
    for (int k = 0; k < copies; ++k) {
        for (const Edge& e : block.edges()) {
            specs.push_back({replica_name(e.from, k), replica_name(e.to, k), e.mu, e.sigma});
        }
    }
    return TimingGraph::from_edges(specs);
}

PathSet enumerate_paths(const TimingGraph& g, std::size_t cap) {
    if (cap < 1) {
        throw DomainError("enumerate_paths: cap must be >= 1");
    }
    const auto sources = g.sources();
    const auto sinks = g.sinks();
    if (sources.size() != 1 || sinks.size() != 1) {
        throw DomainError("enumerate_paths: graph must have a single source and sink "
                          "(apply normalize_source_sink first)");
    }
    const std::size_t sink = sinks.front();

    PathSet ps;
    std::vector<std::size_t> current;
    // (node, next position in out_edges(node))
    std::vector<std::pair<std::size_t, std::size_t>> stack{{sources.front(), 0}};
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (node == sink) {
            if (ps.paths.size() == cap) {
                throw PathExplosionError(cap + 1, cap);
            }
            ps.paths.push_back(current);
            ps.lengths.push_back(current.size());
            stack.pop_back();
            if (!current.empty()) current.pop_back();
            continue;
        }
        const auto out = g.out_edges(node);
        if (next == out.size()) {
            stack.pop_back();
            if (!current.empty()) current.pop_back();
            continue;
        }
        const std::size_t e = out[next++];
        current.push_back(e);
        stack.emplace_back(g.edges()[e].to, 0);
    }
    return ps;
}

std::vector<std::size_t> path_nodes(const TimingGraph& g, std::span<const std::size_t> path) {
    std::vector<std::size_t> nodes;
    if (path.empty()) {
        return nodes;
    }
    nodes.push_back(g.edges()[path.front()].from);
    for (std::size_t e : path) {
        nodes.push_back(g.edges()[e].to);
    }
    return nodes;
}

DelayParams accumulated_delay_params(const TimingGraph& g, std::span<const std::size_t> path) {
    double mean = 0.0;
    double var = 0.0;
    for (std::size_t e : path) {
        const Edge& edge = g.edges().at(e);
        mean += edge.mu;
        var += edge.sigma * edge.sigma;
    }
    return {mean, std::sqrt(var)};
}

}  // namespace evssta::graph
