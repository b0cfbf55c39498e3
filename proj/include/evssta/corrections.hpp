#ifndef EVSSTA_CORRECTIONS_HPP
#define EVSSTA_CORRECTIONS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "evssta/gumbel.hpp"

// Corrections to the Gumbel law for the maximum of weakly correlated
// standard Gaussians.
//
// All corrections depend on the correlation structure only through
// S = sum_{i != j} eps_ij and enter via the variable
//
//     x(z) = phi(z)^2 S / (4 pi)
//
// as   first:    F = Psi_N (1 + x)
//      second:   F = Psi_N (1 + x + x^2/2)
//      complete: F = Psi_N exp(x)
//
// Densities are the exact z-derivatives of these CDFs. Outside the weak
// correlation regime the CDFs may leave [0,1] or lose monotonicity; values
// are never clamped, validity_check() reports where that happens.

namespace evssta::corrections {

using gumbel::GumbelParams;

enum class Order { First, Second, Complete };

std::string_view to_string(Order order);
std::optional<Order> parse_order(std::string_view name);

// Symmetric n x n matrix of off-diagonal covariance perturbations with zero
// diagonal and |eps_ij| < 1.
class EpsilonMatrix {
public:
    static EpsilonMatrix zeros(std::size_t n);

    // Row-major entries; validates diagonal, symmetry and magnitude.
    static EpsilonMatrix from_entries(std::size_t n, std::vector<double> entries);

    // eps_ij = rho^|i-j| for i != j. Requires rho in [0, 1).
    static EpsilonMatrix from_ar1(std::size_t n, double rho);

    // Off-diagonal part of a (correlation) matrix; its diagonal is ignored.
    static EpsilonMatrix from_covariance(std::size_t n, std::span<const double> cov);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    [[nodiscard]] std::span<const double> entries() const noexcept { return data_; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data_).subspan(i * n_, n_);
    }
    [[nodiscard]] double max_abs() const noexcept;

private:
    EpsilonMatrix(std::size_t n, std::vector<double> data) : n_(n), data_(std::move(data)) {}

    std::size_t n_;
    std::vector<double> data_;
};

struct CorrelationSum {
    double s = 0.0;
};

// S = sum_{i != j} eps_ij. Rows are summed in parallel and combined in row
// order, so the result does not depend on the thread count.
CorrelationSum correlation_sum(const EpsilonMatrix& eps);

// S for the AR(1) structure eps_ij = rho^|i-j| without materializing the
// matrix: 2 sum_{d=1}^{n-1} (n - d) rho^d.
CorrelationSum ar1_correlation_sum(std::int64_t n, double rho);

// phi(z)^2 S / (4 pi)
double correction_variable(double z, CorrelationSum s);

double corrected_cdf(double z, const GumbelParams& p, CorrelationSum s, Order order);
double corrected_pdf(double z, const GumbelParams& p, CorrelationSum s, Order order);

struct GridEvaluation {
    std::vector<double> z;
    std::vector<double> cdf;
    std::vector<double> pdf;
};

// Pointwise CDF/PDF on a z-grid (OpenMP over grid points).
GridEvaluation evaluate_grid(std::span<const double> z, const GumbelParams& p, CorrelationSum s,
                             Order order);

struct Moments {
    double mean;
    double std;
};

// Mean and standard deviation of the corrected density by adaptive
// Gauss-Kronrod quadrature over [alpha - 20 beta, alpha + 40 beta].
Moments corrected_moments(const GumbelParams& p, CorrelationSum s, Order order);

inline constexpr double kDefaultSmallnessThreshold = 0.3;

struct ValidityReport {
    bool smallness_ok = true;
    double max_abs_eps = 0.0;
    double threshold = kDefaultSmallnessThreshold;
    bool cdf_monotone = true;
    bool cdf_bounded = true;
    bool pdf_nonnegative = true;
    // Grid points where any of the three shape checks fails, ascending.
    std::vector<double> z_violations;
    // Interior local maxima of the PDF on the grid. A second mode is the
    // spurious hump that appears once correlations are too strong for the
    // asymptotic expansion; it is reported but not counted as a violation.
    std::vector<double> pdf_modes;

    [[nodiscard]] std::size_t flagged_points() const noexcept { return z_violations.size(); }
    [[nodiscard]] bool shape_ok() const noexcept {
        return cdf_monotone && cdf_bounded && pdf_nonnegative;
    }
};

// z_grid must be sorted ascending.
ValidityReport validity_check(const GumbelParams& p, CorrelationSum s, double max_abs_eps,
                              std::span<const double> z_grid, Order order,
                              double threshold = kDefaultSmallnessThreshold);
ValidityReport validity_check(const GumbelParams& p, CorrelationSum s, const EpsilonMatrix& eps,
                              std::span<const double> z_grid, Order order,
                              double threshold = kDefaultSmallnessThreshold);

// First-order expansion of the joint density of standardized, weakly
// correlated Gaussians:
//   omega_0(r) [1 + 1/2 sum_{i != j} eps_ij x_i x_j].
// Only intended as a test oracle, so dim(r) is limited to 8.
inline constexpr std::size_t kMaxExpansionDim = 8;
double correlated_pdf_first_order(std::span<const double> r, const EpsilonMatrix& eps);

// Absolute discrepancy between the central finite difference of the
// characteristic function chi(k) in eps_ij at eps = 0 and the analytic
// 1/2 d^2 chi_0 / d mu_i d mu_j = -1/2 k_i k_j chi_0. O(h^2).
// Throws DomainError for i == j or h outside (1e-6, 1e-3).
double char_fn_identity_check(std::span<const double> k, std::span<const double> mu,
                              std::span<const double> sigma, std::size_t i, std::size_t j,
                              double h);

// count points evenly spaced on [lo, hi], both ends included.
std::vector<double> linspace(double lo, double hi, std::size_t count);

namespace ref {

// Serial reference implementations kept for testing the parallel kernels.
CorrelationSum correlation_sum(const EpsilonMatrix& eps);
GridEvaluation evaluate_grid(std::span<const double> z, const GumbelParams& p, CorrelationSum s,
                             Order order);

}  // namespace ref

}  // namespace evssta::corrections

#endif  // EVSSTA_CORRECTIONS_HPP
