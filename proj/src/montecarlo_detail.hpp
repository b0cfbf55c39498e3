#ifndef EVSSTA_SRC_MONTECARLO_DETAIL_HPP
#define EVSSTA_SRC_MONTECARLO_DETAIL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "evssta/errors.hpp"
#include "evssta/montecarlo.hpp"

// Per-repetition draws shared by the parallel kernels and their serial
// references. Both paths must consume random numbers in exactly this order.

namespace evssta::mc::detail {

inline double ar1_chain_max(const Ar1Model& model, RngStream& rng) {
    const double innovation = model.sigma * std::sqrt(1.0 - model.rho * model.rho);
    double x = model.sigma * rng.normal();
    double best = x;
    for (std::int64_t i = 1; i < model.n; ++i) {
        x = model.rho * x + innovation * rng.normal();
        best = std::max(best, x);
    }
    return best;
}

// max_i (mean_i + (R z)_i) with z ~ N(0, I); `noise` is scratch of size n.
inline double mvn_max(const CovarianceRoot& root, std::span<const double> mean, RngStream& rng,
                      std::vector<double>& noise) {
    const std::size_t n = root.n;
    for (std::size_t k = 0; k < n; ++k) {
        noise[k] = rng.normal();
    }
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = root.root.data() + i * n;
        double x = mean.empty() ? 0.0 : mean[i];
        for (std::size_t k = 0; k < n; ++k) {
            x += row[k] * noise[k];
        }
        best = std::max(best, x);
    }
    return best;
}

inline void check_mean(std::size_t n, std::span<const double> mean) {
    if (!mean.empty() && mean.size() != n) {
        throw DimensionMismatch("sample_multivariate_max: mean must have n entries");
    }
}

}  // namespace evssta::mc::detail

#endif  // EVSSTA_SRC_MONTECARLO_DETAIL_HPP
