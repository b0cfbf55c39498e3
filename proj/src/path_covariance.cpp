#include <cstdint>

#include "evssta/timing_graph.hpp"
#include "path_covariance_detail.hpp"

namespace evssta::graph {

PathCovariance path_covariance(const PathSet& ps, const TimingGraph& g) {
    const std::size_t n = ps.size();
    const detail::PathTable table = detail::make_table(ps, g);
    std::vector<double> data(n * n, 0.0);
    const auto rows = static_cast<std::int64_t>(n);
    // Row i owns (i, j) and its mirror for j >= i.
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        data[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double c = detail::entry(table, g, i, j);
            data[i * n + j] = c;
            data[j * n + i] = c;
        }
    }
    return PathCovariance(n, std::move(data));
}

}  // namespace evssta::graph
