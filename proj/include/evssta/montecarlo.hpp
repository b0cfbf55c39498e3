#ifndef EVSSTA_MONTECARLO_HPP
#define EVSSTA_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "evssta/rng.hpp"

// Seeded Monte Carlo oracle for the maximum of correlated Gaussians.
//
// Every repetition draws from RngStream(seed, repetition index) and writes
// its sample into a slot indexed by repetition, so results are bitwise
// identical for any worker count.

namespace evssta::mc {

// Stationary AR(1) chain X_{i+1} = rho X_i + sigma sqrt(1 - rho^2) Y_i with
// X_0 ~ N(0, sigma^2); lag-d correlation is rho^d.
struct Ar1Model {
    std::int64_t n = 1;
    double rho = 0.0;
    double sigma = 1.0;

    // Throws DomainError unless n >= 1, rho in [0, 1], sigma > 0.
    void validate() const;
};

struct McConfig {
    std::int64_t reps = 10000;
    std::uint64_t seed = 0;
    int workers = 1;

    void validate() const;
};

struct Histogram {
    std::vector<double> edges;  // bins + 1 ascending edges
    std::vector<std::int64_t> counts;

    // Normalized density of bin b (count / (total * width)).
    [[nodiscard]] double density(std::size_t b) const;
};

struct McResult {
    std::vector<double> samples;  // indexed by repetition
    double mean = 0.0;
    double std = 0.0;             // unbiased
    std::vector<double> ecdf;     // sorted samples
    Histogram histogram;

    // Fraction of samples <= z.
    [[nodiscard]] double ecdf_at(double z) const;
    // std / sqrt(reps)
    [[nodiscard]] double standard_error() const;
};

// bins == 0 selects the Freedman-Diaconis rule. Throws EmptyInput.
McResult empirical_stats(std::span<const double> samples, int bins = 0);

// Bin count by Freedman-Diaconis on sorted samples; at least 1.
int freedman_diaconis_bins(std::span<const double> sorted);

// One chain of length model.n drawn from rng.
std::vector<double> sample_ar1_chain(const Ar1Model& model, RngStream& rng);

// reps maxima of independent AR(1) chains.
McResult sample_max_distribution(const Ar1Model& model, const McConfig& cfg, int bins = 0);

// Square root R of a symmetric positive semidefinite matrix (R R^T = cov),
// from a pivoted LDL^T factorization. Pivots below -tol * max(1, max diag)
// raise NotPsdError; small negative pivots are clamped to zero.
struct CovarianceRoot {
    std::size_t n = 0;
    std::vector<double> root;  // row-major n x n
};

inline constexpr double kPsdTolerance = 1e-10;

CovarianceRoot factor_covariance(std::size_t n, std::span<const double> cov,
                                 double tol = kPsdTolerance);

// reps maxima of N(mean, cov) vectors; mean defaults to zero.
McResult sample_multivariate_max(std::size_t n, std::span<const double> cov, const McConfig& cfg,
                                 std::span<const double> mean = {}, int bins = 0);

// Deviations from IID: mu_i = mu + xi delta_mu, sigma_i = sigma + xi' delta_sigma
// with xi, xi' ~ U(-1, 1) independent, X_i ~ N(mu_i, sigma_i^2) independent.
struct NonIidConfig {
    std::vector<std::int64_t> n_grid;
    double mu = 0.0;
    double sigma = 1.0;
    double delta_mu = 0.0;
    double delta_sigma = 0.0;
    std::int64_t reps = 10000;
    std::uint64_t seed = 0;
    int workers = 1;
    // Draw (mu_i, sigma_i) once per n instead of once per repetition.
    bool freeze_params = false;

    void validate() const;
};

struct NonIidRow {
    std::int64_t n;
    double mean;
    double std;
    double mean_se;  // std / sqrt(reps)
};

std::vector<NonIidRow> non_iid_experiment(const NonIidConfig& cfg);

// Half-width of the Dvoretzky-Kiefer-Wolfowitz band: sqrt(ln(2/(1-c)) / 2m).
double dkw_epsilon(std::size_t count, double confidence = 0.99);

// sup_z |ECDF(z) - cdf(z)| over sorted samples.
double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf);

namespace ref {

// Serial reference implementations of the parallel kernels.
McResult sample_max_distribution(const Ar1Model& model, const McConfig& cfg, int bins = 0);
McResult sample_multivariate_max(std::size_t n, std::span<const double> cov, const McConfig& cfg,
                                 std::span<const double> mean = {}, int bins = 0);

}  // namespace ref

}  // namespace evssta::mc

#endif  // EVSSTA_MONTECARLO_HPP
