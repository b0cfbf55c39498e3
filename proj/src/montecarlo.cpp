#include "evssta/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "evssta/errors.hpp"
#include "montecarlo_detail.hpp"

namespace evssta::mc {

namespace {

constexpr int kMaxBins = 100000;
// Stream ids at and above this value are reserved for draws that are not
// tied to a repetition (frozen non-IID parameters).
constexpr std::uint64_t kReservedStreams = std::uint64_t{1} << 63;

double sorted_quantile(std::span<const double> sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

struct MeanStd {
    double mean;
    double std;
};

MeanStd mean_std(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    const double mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

void Ar1Model::validate() const {
    if (n < 1) {
        throw DomainError("AR(1) model: n must be >= 1");
    }
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw DomainError("AR(1) model: rho must lie in [0, 1]");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("AR(1) model: sigma must be positive");
    }
}

void McConfig::validate() const {
    if (reps < 1) {
        throw DomainError("Monte Carlo config: reps must be >= 1");
    }
    if (workers < 1) {
        throw DomainError("Monte Carlo config: workers must be >= 1");
    }
}

double Histogram::density(std::size_t b) const {
    std::int64_t total = 0;
    for (auto c : counts) {
        total += c;
    }
    const double width = edges[b + 1] - edges[b];
    return static_cast<double>(counts[b]) / (static_cast<double>(total) * width);
}

double McResult::ecdf_at(double z) const {
    const auto it = std::upper_bound(ecdf.begin(), ecdf.end(), z);
    return static_cast<double>(it - ecdf.begin()) / static_cast<double>(ecdf.size());
}

double McResult::standard_error() const {
    return std / std::sqrt(static_cast<double>(samples.size()));
}

int freedman_diaconis_bins(std::span<const double> sorted) {
    if (sorted.size() < 2) {
        return 1;
    }
    const double range = sorted.back() - sorted.front();
    const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    if (!(width > 0.0) || !(range > 0.0)) {
        return 1;
    }
    const double bins = std::ceil(range / width);
    return static_cast<int>(std::clamp(bins, 1.0, static_cast<double>(kMaxBins)));
}

McResult empirical_stats(std::span<const double> samples, int bins) {
    if (samples.empty()) {
        throw EmptyInput("empirical_stats: no samples");
    }
    if (bins < 0) {
        throw DomainError("empirical_stats: bins must be >= 1 (0 selects Freedman-Diaconis)");
    }
    McResult r;
    r.samples.assign(samples.begin(), samples.end());
    const MeanStd ms = mean_std(samples);
    r.mean = ms.mean;
    r.std = ms.std;
    r.ecdf = r.samples;
    std::sort(r.ecdf.begin(), r.ecdf.end());

    const int nbins = bins == 0 ? freedman_diaconis_bins(r.ecdf) : bins;
    double lo = r.ecdf.front();
    double hi = r.ecdf.back();
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / nbins;
    r.histogram.edges.resize(static_cast<std::size_t>(nbins) + 1);
    for (int b = 0; b <= nbins; ++b) {
        r.histogram.edges[static_cast<std::size_t>(b)] = lo + width * b;
    }
    r.histogram.edges.back() = hi;
    r.histogram.counts.assign(static_cast<std::size_t>(nbins), 0);
    for (double x : r.samples) {
        auto b = static_cast<std::int64_t>(std::floor((x - lo) / width));
        b = std::clamp<std::int64_t>(b, 0, nbins - 1);
        ++r.histogram.counts[static_cast<std::size_t>(b)];
    }
    return r;
}

std::vector<double> sample_ar1_chain(const Ar1Model& model, RngStream& rng) {
    model.validate();
    const double innovation = model.sigma * std::sqrt(1.0 - model.rho * model.rho);
    std::vector<double> chain(static_cast<std::size_t>(model.n));
    chain[0] = model.sigma * rng.normal();
    for (std::size_t i = 1; i < chain.size(); ++i) {
        chain[i] = model.rho * chain[i - 1] + innovation * rng.normal();
    }
    return chain;
}

McResult sample_max_distribution(const Ar1Model& model, const McConfig& cfg, int bins) {
    model.validate();
    cfg.validate();
    std::vector<double> maxima(static_cast<std::size_t>(cfg.reps));
#pragma omp parallel for num_threads(cfg.workers) schedule(static)
    for (std::int64_t rep = 0; rep < cfg.reps; ++rep) {
        RngStream rng(cfg.seed, static_cast<std::uint64_t>(rep));
        maxima[static_cast<std::size_t>(rep)] = detail::ar1_chain_max(model, rng);
    }
    return empirical_stats(maxima, bins);
}

CovarianceRoot factor_covariance(std::size_t n, std::span<const double> cov, double tol) {
    if (cov.size() != n * n) {
        throw DimensionMismatch("factor_covariance: expected an n x n matrix");
    }
    if (n == 0) {
        throw EmptyInput("factor_covariance: empty matrix");
    }
    using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMatrix> a(cov.data(), static_cast<Eigen::Index>(n),
                                        static_cast<Eigen::Index>(n));
    if (!a.allFinite()) {
        throw NotPsdError("factor_covariance: non-finite entries");
    }
    const double scale = std::max(1.0, a.diagonal().cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
        throw NotPsdError("factor_covariance: matrix is not symmetric");
    }

    // info() is not consulted: Eigen flags exact zero pivots as a numerical
    // issue, yet singular PSD matrices (more paths than edges) are valid
    // here. The pivot and residual checks below decide.
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    Eigen::VectorXd d = ldlt.vectorD();
    for (Eigen::Index k = 0; k < d.size(); ++k) {
        if (d[k] < -tol * scale) {
            throw NotPsdError("factor_covariance: matrix is not positive semidefinite (pivot " +
                              std::to_string(d[k]) + ")");
        }
        d[k] = std::sqrt(std::max(d[k], 0.0));
    }
    // A = P^T L D L^T P, so R = P^T L D^(1/2) satisfies R R^T = A.
    Eigen::MatrixXd lower = ldlt.matrixL();
    Eigen::MatrixXd root = ldlt.transpositionsP().transpose() * (lower * d.asDiagonal());

    const double residual = (root * root.transpose() - a).cwiseAbs().maxCoeff();
    if (residual > std::sqrt(tol) * scale) {
        throw NotPsdError("factor_covariance: reconstruction residual " + std::to_string(residual));
    }

    CovarianceRoot out;
    out.n = n;
    out.root.resize(n * n);
    Eigen::Map<RowMatrix>(out.root.data(), static_cast<Eigen::Index>(n),
                          static_cast<Eigen::Index>(n)) = root;
    return out;
}

McResult sample_multivariate_max(std::size_t n, std::span<const double> cov, const McConfig& cfg,
                                 std::span<const double> mean, int bins) {
    cfg.validate();
    detail::check_mean(n, mean);
    const CovarianceRoot root = factor_covariance(n, cov);
    std::vector<double> maxima(static_cast<std::size_t>(cfg.reps));
#pragma omp parallel num_threads(cfg.workers)
    {
        std::vector<double> noise(n);
#pragma omp for schedule(static)
        for (std::int64_t rep = 0; rep < cfg.reps; ++rep) {
            RngStream rng(cfg.seed, static_cast<std::uint64_t>(rep));
            maxima[static_cast<std::size_t>(rep)] = detail::mvn_max(root, mean, rng, noise);
        }
    }
    return empirical_stats(maxima, bins);
}

void NonIidConfig::validate() const {
    if (n_grid.empty()) {
        throw DomainError("non-IID config: empty n grid");
    }
    for (auto n : n_grid) {
        if (n < 1) {
            throw DomainError("non-IID config: every n must be >= 1");
        }
    }
    if (!(sigma > 0.0)) {
        throw DomainError("non-IID config: sigma must be positive");
    }
    if (!(delta_mu >= 0.0) || !(delta_sigma >= 0.0)) {
        throw DomainError("non-IID config: deltas must be nonnegative");
    }
    if (!(sigma - delta_sigma > 0.0)) {
        throw DomainError("non-IID config: sigma - delta_sigma must be positive");
    }
    if (reps < 2) {
        throw DomainError("non-IID config: reps must be >= 2");
    }
    if (workers < 1) {
        throw DomainError("non-IID config: workers must be >= 1");
    }
}

std::vector<NonIidRow> non_iid_experiment(const NonIidConfig& cfg) {
    cfg.validate();
    std::vector<NonIidRow> rows;
    rows.reserve(cfg.n_grid.size());
    std::vector<double> maxima(static_cast<std::size_t>(cfg.reps));
    for (const std::int64_t n : cfg.n_grid) {
        const auto count = static_cast<std::size_t>(n);
        std::vector<double> frozen_mu;
        std::vector<double> frozen_sigma;
        if (cfg.freeze_params) {
            RngStream rng(cfg.seed, kReservedStreams | static_cast<std::uint64_t>(n));
            frozen_mu.resize(count);
            frozen_sigma.resize(count);
            for (std::size_t i = 0; i < count; ++i) {
                frozen_mu[i] = cfg.mu + rng.uniform(-1.0, 1.0) * cfg.delta_mu;
                frozen_sigma[i] = cfg.sigma + rng.uniform(-1.0, 1.0) * cfg.delta_sigma;
            }
        }
#pragma omp parallel for num_threads(cfg.workers) schedule(static)
        for (std::int64_t rep = 0; rep < cfg.reps; ++rep) {
            RngStream rng(cfg.seed, static_cast<std::uint64_t>(rep));
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < count; ++i) {
                double mu_i;
                double sigma_i;
                if (cfg.freeze_params) {
                    mu_i = frozen_mu[i];
                    sigma_i = frozen_sigma[i];
                } else {
                    mu_i = cfg.mu + rng.uniform(-1.0, 1.0) * cfg.delta_mu;
                    sigma_i = cfg.sigma + rng.uniform(-1.0, 1.0) * cfg.delta_sigma;
                }
                best = std::max(best, mu_i + sigma_i * rng.normal());
            }
            maxima[static_cast<std::size_t>(rep)] = best;
        }
        const MeanStd ms = mean_std(maxima);
        rows.push_back({n, ms.mean, ms.std, ms.std / std::sqrt(static_cast<double>(cfg.reps))});
    }
    return rows;
}

double dkw_epsilon(std::size_t count, double confidence) {
    if (count == 0) {
        throw EmptyInput("dkw_epsilon: no samples");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw DomainError("dkw_epsilon: confidence must lie in (0, 1)");
    }
    return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(count)));
}

double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf) {
    if (sorted.empty()) {
        throw EmptyInput("ks_distance: no samples");
    }
    const double m = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, std::abs(f - static_cast<double>(i) / m),
                      std::abs(static_cast<double>(i + 1) / m - f)});
    }
    return d;
}

}  // namespace evssta::mc
