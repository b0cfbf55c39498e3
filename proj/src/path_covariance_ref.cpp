#include "evssta/timing_graph.hpp"
#include "path_covariance_detail.hpp"

namespace evssta::graph::ref {

PathCovariance path_covariance(const PathSet& ps, const TimingGraph& g) {
    const std::size_t n = ps.size();
    const detail::PathTable table = detail::make_table(ps, g);
    std::vector<double> data(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            data[i * n + j] = i == j ? 1.0 : detail::entry(table, g, i, j);
        }
    }
    return PathCovariance(n, std::move(data));
}

}  // namespace evssta::graph::ref
