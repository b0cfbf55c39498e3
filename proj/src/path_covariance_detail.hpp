#ifndef EVSSTA_PATH_COVARIANCE_DETAIL_HPP
#define EVSSTA_PATH_COVARIANCE_DETAIL_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "evssta/timing_graph.hpp"

namespace evssta::graph::detail {

struct PathTable {
    std::vector<std::vector<std::size_t>> sorted_edges;
    std::vector<double> scale;  // sqrt(L_i) or std_i
    bool uniform = false;
};

inline PathTable make_table(const PathSet& ps, const TimingGraph& g) {
    PathTable t;
    t.uniform = g.has_uniform_sigma();
    t.sorted_edges = ps.paths;
    t.scale.resize(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        std::sort(t.sorted_edges[i].begin(), t.sorted_edges[i].end());
        t.scale[i] = t.uniform ? std::sqrt(static_cast<double>(ps.paths[i].size()))
                               : accumulated_delay_params(g, ps.paths[i]).std;
    }
    return t;
}

inline double entry(const PathTable& t, const TimingGraph& g, std::size_t i, std::size_t j) {
    const double denom = t.scale[i] * t.scale[j];
    if (denom == 0.0) {
        return 0.0;
    }
    const auto& a = t.sorted_edges[i];
    const auto& b = t.sorted_edges[j];
    double shared = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            const double s = g.edges()[*ia].sigma;
            shared += t.uniform ? 1.0 : s * s;
            ++ia;
            ++ib;
        }
    }
    return shared / denom;
}

}  // namespace evssta::graph::detail

#endif  // EVSSTA_PATH_COVARIANCE_DETAIL_HPP
