#include "evssta/montecarlo.hpp"

#include "montecarlo_detail.hpp"

namespace evssta::mc::ref {

McResult sample_max_distribution(const Ar1Model& model, const McConfig& cfg, int bins) {
    model.validate();
    cfg.validate();
    std::vector<double> maxima;
    maxima.reserve(static_cast<std::size_t>(cfg.reps));
    for (std::int64_t rep = 0; rep < cfg.reps; ++rep) {
        RngStream rng(cfg.seed, static_cast<std::uint64_t>(rep));
        maxima.push_back(detail::ar1_chain_max(model, rng));
    }
    return empirical_stats(maxima, bins);
}

McResult sample_multivariate_max(std::size_t n, std::span<const double> cov, const McConfig& cfg,
                                 std::span<const double> mean, int bins) {
    cfg.validate();
    detail::check_mean(n, mean);
    const CovarianceRoot root = factor_covariance(n, cov);
    std::vector<double> noise(n);
    std::vector<double> maxima;
    maxima.reserve(static_cast<std::size_t>(cfg.reps));
    for (std::int64_t rep = 0; rep < cfg.reps; ++rep) {
        RngStream rng(cfg.seed, static_cast<std::uint64_t>(rep));
        maxima.push_back(detail::mvn_max(root, mean, rng, noise));
    }
    return empirical_stats(maxima, bins);
}

}  // namespace evssta::mc::ref
