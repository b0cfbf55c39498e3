#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

#include "evssta/errors.hpp"
#include "evssta/timing_graph.hpp"
#include "graph_fixtures.hpp"

using namespace evssta;
using namespace evssta::graph;

TEST_CASE("graph: shared-node example loads") {
    const auto g = load_graph(fixture("shared_nodes.txt"));
    CHECK(g.node_count() == 7);
    CHECK(g.edge_count() == 9);
    CHECK(g.sources().size() == 1);
    CHECK(g.node_name(g.sources().front()) == "1");
    CHECK(g.node_name(g.sinks().front()) == "7");
    CHECK(g.has_uniform_sigma());

    // Topological order respects every edge.
    std::vector<std::size_t> position(g.node_count());
    for (std::size_t k = 0; k < g.topological_order().size(); ++k) {
        position[g.topological_order()[k]] = k;
    }
    for (const Edge& e : g.edges()) {
        CHECK(position[e.from] < position[e.to]);
    }
}

TEST_CASE("graph: text parser errors carry line numbers") {
    const auto line_of = [](const std::string& text) -> std::size_t {
        try {
            (void)parse_graph(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("a b 1 0.1\nb c 1\n") == 2);
    CHECK(line_of("# header\n\na b 1 -0.1\n") == 3);
    CHECK(line_of("a b x 0.1\n") == 1);
    CHECK(line_of("a b 1 0.1 extra\n") == 1);
    CHECK(line_of("a b 1 inf\n") == 1);
    CHECK(line_of("a a 1 0.1\n") == 1);
    CHECK(line_of("a b 1 0.1\n  # indented comment\nb c 2 0.2") == 0);

    CHECK_THROWS_AS(parse_graph("a b 1 0.1\na b 2 0.1\n"), DuplicateEdgeError);
    CHECK_THROWS_AS(parse_graph("a b 1 0.1\nb c 1 0.1\nc a 1 0.1\n"), CycleError);
    CHECK_THROWS_AS(parse_graph("a b 1 0.1\nb c 1 0.1\nc b 1 0.1\n"), CycleError);
}

TEST_CASE("graph: programmatic construction validates") {
    CHECK_THROWS_AS(TimingGraph::from_edges(std::vector<EdgeSpec>{{"a", "a", 1, 0}}), DomainError);
    CHECK_THROWS_AS(TimingGraph::from_edges(std::vector<EdgeSpec>{{"a", "b", -1, 0}}), DomainError);
    CHECK_THROWS_AS(TimingGraph::from_edges(std::vector<EdgeSpec>{{"a", "b", 1, NAN}}), DomainError);
    CHECK_THROWS_AS(TimingGraph::from_edges(std::vector<EdgeSpec>{{"", "b", 1, 0}}), DomainError);
}

TEST_CASE("graph: JSON and text formats agree") {
    const std::string json = R"({"edges": [
        {"from": "s", "to": "a", "mu": 1.0, "sigma": 0.1},
        {"from": "a", "to": "t", "mu": 2.5, "sigma": 0.2},
        {"from": "s", "to": "t", "mu": 3.0, "sigma": 0.3}]})";
    const auto a = parse_graph_json(json);
    const auto b = parse_graph("s a 1 0.1\na t 2.5 0.2\ns t 3 0.3\n");
    CHECK(format_graph(a) == format_graph(b));
    CHECK_THROWS_AS(parse_graph_json("{\"edges\": [1, 2]}"), ParseError);
    CHECK_THROWS_AS(parse_graph_json("{not json"), ParseError);
    CHECK_THROWS_AS(parse_graph_json(R"({"edges": [{"from": "a", "to": "b", "mu": -1, "sigma": 0}]})"), ParseError);
}

TEST_CASE("graph: format round trip is exact") {
    const auto g = parse_graph("x y 0.1 0.30000000000000004\ny z 1e-7 2\n");
    const auto h = parse_graph(format_graph(g));
    REQUIRE(h.edge_count() == 2);
    CHECK(h.edges()[0].sigma == 0.30000000000000004);
    CHECK(h.edges()[1].mu == 1e-7);
}

TEST_CASE("graph: source/sink normalization") {
    const auto g = parse_graph("a c 1 0.1\nb c 1 0.1\nc d 1 0.1\nc e 1 0.1\n");
    CHECK(g.sources().size() == 2);
    CHECK(g.sinks().size() == 2);
    CHECK_THROWS_AS(enumerate_paths(g), DomainError);
    const auto n = normalize_source_sink(g);
    CHECK(n.sources().size() == 1);
    CHECK(n.sinks().size() == 1);
    CHECK(n.node_name(n.sources().front()) == kVirtualSource);
    CHECK(n.node_name(n.sinks().front()) == kVirtualSink);
    CHECK(n.edge_count() == g.edge_count() + 4);
    CHECK(enumerate_paths(n).size() == 4);
    CHECK(format_graph(normalize_source_sink(n)) == format_graph(n));
}

TEST_CASE("graph: path enumeration") {
    const auto shared = load_graph(fixture("shared_nodes.txt"));
    const auto ps = enumerate_paths(shared);
    REQUIRE(ps.size() == 4);
    CHECK(ps.lengths == std::vector<std::size_t>{6, 5, 4, 4});
    CHECK(node_sequence(shared, ps.paths[0]) == "1>2>4>3>5>6>7");

    CHECK(enumerate_paths(load_graph(fixture("diamond.txt"))).size() == 2);
    const auto block = load_graph(fixture("block8.txt"));
    const auto block_paths = enumerate_paths(block);
    CHECK(block_paths.size() == 8);
    CHECK(*std::min_element(block_paths.lengths.begin(), block_paths.lengths.end()) == 6);
    CHECK(*std::max_element(block_paths.lengths.begin(), block_paths.lengths.end()) == 9);
    CHECK(enumerate_paths(load_graph(fixture("cascade64.txt"))).size() == 64);

    // Every path is distinct and runs source to sink.
    std::set<std::vector<std::size_t>> unique(block_paths.paths.begin(), block_paths.paths.end());
    CHECK(unique.size() == 8);
}

TEST_CASE("graph: path cap") {
    const auto cascade = load_graph(fixture("cascade64.txt"));
    try {
        (void)enumerate_paths(cascade, 10);
        FAIL("expected PathExplosionError");
    } catch (const PathExplosionError& e) {
        CHECK(e.cap() == 10);
        CHECK(e.count_reached() == 11);
    }
    CHECK(enumerate_paths(cascade, 64).size() == 64);
    CHECK_THROWS_AS(enumerate_paths(cascade, 63), PathExplosionError);

    // 2^20 paths: the cap stops enumeration early.
    const auto wide = make_cascade(parse_graph("s a 1 0.1\ns b 1 0.1\na t 1 0.1\nb t 1 0.1\n"), 20);
    CHECK_THROWS_AS(enumerate_paths(wide), PathExplosionError);
}

TEST_CASE("graph: cascade construction matches the fixture") {
    const auto block = load_graph(fixture("block8.txt"));
    const auto built = make_cascade(block, 2);
    const auto file = load_graph(fixture("cascade64.txt"));
    const auto specs = [](const TimingGraph& g) {
        std::set<std::tuple<std::string, std::string, double, double>> s;
        for (const auto& e : g.edge_specs()) s.emplace(e.from, e.to, e.mu, e.sigma);
        return s;
    };
    CHECK(specs(built) == specs(file));
    CHECK(enumerate_paths(make_cascade(block, 1)).size() == 8);
    CHECK_THROWS_AS(make_cascade(block, 0), DomainError);
}

TEST_CASE("graph: accumulated delay") {
    const auto g = parse_graph("s a 1 0.3\na t 2 0.4\n");
    const auto ps = enumerate_paths(g);
    const auto d = accumulated_delay_params(g, ps.paths[0]);
    CHECK(d.mean == 3.0);
    CHECK(d.std == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(path_nodes(g, ps.paths[0]).size() == 3);
}

TEST_CASE("graph: homogeneous covariance counts shared edges") {
    const auto g = load_graph(fixture("shared_nodes.txt"));
    const auto ps = enumerate_paths(g);
    const auto c = path_covariance(ps, g);
    CHECK(c(0, 1) == doctest::Approx(4.0 / std::sqrt(30.0)).epsilon(1e-15));
    CHECK(c(2, 3) == doctest::Approx(0.25).epsilon(1e-15));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(c(i, i) == 1.0);
        for (std::size_t j = 0; j < 4; ++j) CHECK(c(i, j) == c(j, i));
    }
}

TEST_CASE("graph: heterogeneous covariance weights shared variance") {
    const auto g = parse_graph("s a 1 0.1\na b 1 0.2\na c 1 0.3\nb t 1 0.4\nc t 1 0.5\n");
    CHECK_FALSE(g.has_uniform_sigma());
    const auto ps = enumerate_paths(g);
    REQUIRE(ps.size() == 2);
    const auto c = path_covariance(ps, g);
    const double v1 = 0.01 + 0.04 + 0.16;
    const double v2 = 0.01 + 0.09 + 0.25;
    CHECK(c(0, 1) == doctest::Approx(0.01 / std::sqrt(v1 * v2)).epsilon(1e-14));

    // Zero-variance paths are uncorrelated with everything.
    const auto z = parse_graph("s a 1 0\na t 1 0\ns t 1 0.2\n");
    const auto zc = path_covariance(enumerate_paths(z), z);
    CHECK(zc(0, 1) == 0.0);
    CHECK(zc(0, 0) == 1.0);
}

TEST_CASE("graph: parallel covariance equals the serial reference bitwise") {
    const auto g = load_graph(fixture("cascade64.txt"));
    const auto ps = enumerate_paths(g);
    const auto a = path_covariance(ps, g);
    const auto b = ref::path_covariance(ps, g);
    CHECK(std::equal(a.data().begin(), a.data().end(), b.data().begin(), b.data().end()));

    const auto hetero = parse_graph("s a 1 0.1\na b 1 0.2\na c 1 0.3\nb t 1 0.4\nc t 1 0.5\ns c 2 0.7\n");
    const auto hp = enumerate_paths(hetero);
    const auto ha = path_covariance(hp, hetero);
    const auto hb = ref::path_covariance(hp, hetero);
    CHECK(std::equal(ha.data().begin(), ha.data().end(), hb.data().begin(), hb.data().end()));
}
