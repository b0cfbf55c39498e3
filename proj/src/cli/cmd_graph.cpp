#include <iostream>
#include <memory>
#include <sstream>

#include "commands.hpp"
#include "evssta/analysis.hpp"
#include "evssta/corrections.hpp"
#include "evssta/io.hpp"
#include "evssta/timing_graph.hpp"

namespace evssta::cli {

namespace {

struct GraphOptions {
    std::string file;
    std::size_t cap = graph::kDefaultPathCap;
    std::string out;
    // analyze
    std::string order = "complete";
    std::int64_t reps = 10000;
    std::uint64_t seed = 0;
    int workers = 1;
    std::size_t steps = 601;
    double threshold = corrections::kDefaultSmallnessThreshold;
};

std::filesystem::path output_prefix(const GraphOptions& o, const std::string& tag) {
    if (!o.out.empty()) {
        return resolve_output(o.out);
    }
    return resolve_output(std::filesystem::path(o.file).stem().string() + "_" + tag);
}

std::string joined_nodes(const graph::TimingGraph& g, std::span<const std::size_t> path) {
    std::string s;
    for (std::size_t v : graph::path_nodes(g, path)) {
        s += (s.empty() ? "" : ">") + g.node_name(v);
    }
    return s;
}

void run_paths(const CLI::App& sub, const GraphOptions& o) {
    const auto g = graph::normalize_source_sink(graph::load_graph(o.file));
    const auto ps = graph::enumerate_paths(g, o.cap);
    const auto prefix = output_prefix(o, "paths");
    std::ostringstream csv;
    csv << "path,length,mean,std,nodes\n";
    std::cout << ps.size() << " paths\n";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto d = graph::accumulated_delay_params(g, ps.paths[i]);
        const std::string nodes = joined_nodes(g, ps.paths[i]);
        csv << i << ',' << ps.lengths[i] << ',' << io::format_double(d.mean) << ','
            << io::format_double(d.std) << ',' << nodes << '\n';
        std::cout << "  " << i << "  L=" << ps.lengths[i] << "  " << nodes << '\n';
    }
    io::write_text(with_suffix(prefix, ".csv"), csv.str());
    write_manifest(prefix, make_manifest(sub, 0));
}

void run_cov(const CLI::App& sub, const GraphOptions& o) {
    const auto g = graph::normalize_source_sink(graph::load_graph(o.file));
    const auto ps = graph::enumerate_paths(g, o.cap);
    const auto cov = graph::path_covariance(ps, g);
    const auto prefix = output_prefix(o, "cov");
    io::write_matrix_csv(with_suffix(prefix, ".csv"), cov.size(), cov.data());
    write_manifest(prefix, make_manifest(sub, 0));
    std::cout << "wrote " << with_suffix(prefix, ".csv").string() << " (" << cov.size() << "x" << cov.size()
              << ")\n";
}

void run_analyze(const CLI::App& sub, const GraphOptions& o) {
    analysis::AnalysisOptions options;
    options.order = *corrections::parse_order(o.order);
    options.path_cap = o.cap;
    options.grid_steps = o.steps;
    options.smallness_threshold = o.threshold;
    const mc::McConfig cfg{o.reps, o.seed, o.workers};
    const auto report = analysis::graph_delay_analysis(graph::load_graph(o.file), cfg, options);

    const auto prefix = output_prefix(o, "analysis");
    nlohmann::json j = analysis::to_json(report);
    j["graph_file"] = o.file;
    io::write_json(with_suffix(prefix, ".json"), j);
    const std::vector<std::string> header{"z", "delay", "cdf", "pdf"};
    const std::vector<std::vector<double>> columns{report.z, report.delay, report.cdf, report.pdf};
    io::write_columns_csv(with_suffix(prefix, ".csv"), header, columns);
    write_manifest(prefix, make_manifest(sub, o.seed));

    std::cout << "paths " << report.paths.size() << "  S " << io::format_double(report.s.s) << "  max|eps| "
              << io::format_double(report.max_abs_eps) << '\n'
              << "analytic (" << o.order << ")  mean " << io::format_double(report.analytic.mean) << "  std "
              << io::format_double(report.analytic.std) << '\n'
              << "monte carlo      mean " << io::format_double(report.monte_carlo.mean) << "  std "
              << io::format_double(report.monte_carlo.std) << "  se "
              << io::format_double(report.monte_carlo.standard_error()) << '\n';
    if (report.validity && !report.validity->smallness_ok) {
        std::cout << "warning: correlations exceed the smallness threshold; the corrected law is "
                     "outside its domain of validity\n";
    }
}

void add_common(CLI::App* sub, GraphOptions& o) {
    sub->add_option("graph-file", o.file, "edge list (FROM TO MU SIGMA) or .json")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--cap", o.cap, "maximum number of enumerated paths")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "output prefix (default <graph stem>_<command>)");
}

}  // namespace

void register_graph(CLI::App& app) {
    auto o = std::make_shared<GraphOptions>();
    CLI::App* sub = app.add_subcommand("graph", "Timing graph paths, path covariance and delay analysis");
    sub->require_subcommand(1);

    CLI::App* paths = sub->add_subcommand("paths", "List source-to-sink paths");
    add_common(paths, *o);
    paths->callback([paths, o] { run_paths(*paths, *o); });

    CLI::App* cov = sub->add_subcommand("cov", "Write the path correlation matrix");
    add_common(cov, *o);
    cov->callback([cov, o] { run_cov(*cov, *o); });

    CLI::App* analyze = sub->add_subcommand("analyze", "Corrected delay law with a Monte Carlo cross-check");
    add_common(analyze, *o);
    analyze->add_option("--order", o->order, "first | second | complete")
        ->check(CLI::IsMember({"first", "second", "complete"}));
    analyze->add_option("--reps", o->reps, "Monte Carlo repetitions")
        ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
    analyze->add_option("--seed", o->seed, "RNG seed");
    analyze->add_option("--workers", o->workers, "OpenMP threads (results do not depend on it)")
        ->check(CLI::Range(1, 1024));
    analyze->add_option("--steps", o->steps, "grid points")->check(CLI::Range(2, 10000000));
    analyze->add_option("--threshold", o->threshold, "smallness threshold for max |eps|")
        ->check(CLI::PositiveNumber);
    analyze->callback([analyze, o] { run_analyze(*analyze, *o); });
}

}  // namespace evssta::cli
