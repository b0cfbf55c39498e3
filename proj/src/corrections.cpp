#include "evssta/corrections.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "evssta/errors.hpp"
#include "evssta/normal.hpp"

namespace evssta::corrections {

namespace {

constexpr double kFourPi = 4.0 * normal::kPi;
constexpr double kUnderflowCut = -40.0;

void check_square(std::size_t n, std::size_t size) {
    if (size != n * n) {
        throw DimensionMismatch("epsilon matrix: expected " + std::to_string(n * n) + " entries, got " +
                                std::to_string(size));
    }
}

struct PointValue {
    double cdf;
    double pdf;
};

PointValue evaluate_point(double z, const GumbelParams& p, CorrelationSum s, Order order) {
    const double u = (z - p.alpha()) / p.beta();
    if (u < kUnderflowCut) {
        return {0.0, 0.0};
    }
    const double big_psi = gumbel::gumbel_cdf(z, p);
    const double small_psi = gumbel::gumbel_pdf(z, p);
    const double x = correction_variable(z, s);
    // dx/dz = -2 z x
    const double dx = -2.0 * z * x;
    switch (order) {
    case Order::First:
        return {big_psi * (1.0 + x), small_psi * (1.0 + x) + big_psi * dx};
    case Order::Second: {
        const double series = 1.0 + x + 0.5 * x * x;
        return {big_psi * series, small_psi * series + big_psi * (1.0 + x) * dx};
    }
    case Order::Complete: {
        if (big_psi == 0.0) {
            return {0.0, 0.0};
        }
        const double growth = std::exp(x);
        return {big_psi * growth, growth * (small_psi + big_psi * dx)};
    }
    }
    return {big_psi, small_psi};
}

}  // namespace

std::string_view to_string(Order order) {
    switch (order) {
    case Order::First: return "first";
    case Order::Second: return "second";
    case Order::Complete: return "complete";
    }
    return "unknown";
}

std::optional<Order> parse_order(std::string_view name) {
    if (name == "first") return Order::First;
    if (name == "second") return Order::Second;
    if (name == "complete") return Order::Complete;
    return std::nullopt;
}

EpsilonMatrix EpsilonMatrix::zeros(std::size_t n) {
    return EpsilonMatrix(n, std::vector<double>(n * n, 0.0));
}

EpsilonMatrix EpsilonMatrix::from_entries(std::size_t n, std::vector<double> entries) {
    check_square(n, entries.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (entries[i * n + i] != 0.0) {
            throw DomainError("epsilon matrix: diagonal must be zero");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = entries[i * n + j];
            if (!std::isfinite(a) || a != entries[j * n + i]) {
                throw DomainError("epsilon matrix: entries must be finite and symmetric");
            }
            if (!(std::abs(a) < 1.0)) {
                throw DomainError("epsilon matrix: |eps_ij| must be < 1");
            }
        }
    }
    return EpsilonMatrix(n, std::move(entries));
}

EpsilonMatrix EpsilonMatrix::from_ar1(std::size_t n, double rho) {
    if (!(rho >= 0.0 && rho < 1.0)) {
        throw DomainError("epsilon matrix: AR(1) rho must lie in [0, 1)");
    }
    std::vector<double> lag_power(n, 1.0);
    for (std::size_t d = 1; d < n; ++d) {
        lag_power[d] = lag_power[d - 1] * rho;
    }
    std::vector<double> data(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                data[i * n + j] = lag_power[i > j ? i - j : j - i];
            }
        }
    }
    return EpsilonMatrix(n, std::move(data));
}

EpsilonMatrix EpsilonMatrix::from_covariance(std::size_t n, std::span<const double> cov) {
    check_square(n, cov.size());
    std::vector<double> data(cov.begin(), cov.end());
    for (std::size_t i = 0; i < n; ++i) {
        data[i * n + i] = 0.0;
    }
    return from_entries(n, std::move(data));
}

double EpsilonMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

CorrelationSum correlation_sum(const EpsilonMatrix& eps) {
    const auto n = static_cast<std::int64_t>(eps.n());
    std::vector<double> row_sums(eps.n(), 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto row = eps.row(static_cast<std::size_t>(i));
        double acc = 0.0;
        for (std::int64_t j = 0; j < n; ++j) {
            if (j != i) {
                acc += row[static_cast<std::size_t>(j)];
            }
        }
        row_sums[static_cast<std::size_t>(i)] = acc;
    }
    double s = 0.0;
    for (double r : row_sums) {
        s += r;
    }
    return {s};
}

CorrelationSum ar1_correlation_sum(std::int64_t n, double rho) {
    if (n < 1) {
        throw DomainError("ar1_correlation_sum: n must be >= 1");
    }
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw DomainError("ar1_correlation_sum: rho must lie in [0, 1]");
    }
    double s = 0.0;
    double power = 1.0;
    for (std::int64_t d = 1; d < n; ++d) {
        power *= rho;
        if (power == 0.0) {
            break;
        }
        s += static_cast<double>(n - d) * power;
    }
    return {2.0 * s};
}

double correction_variable(double z, CorrelationSum s) {
    const double phi = normal::phi_kernel(z);
    return phi * phi * s.s / kFourPi;
}

double corrected_cdf(double z, const GumbelParams& p, CorrelationSum s, Order order) {
    return evaluate_point(z, p, s, order).cdf;
}

double corrected_pdf(double z, const GumbelParams& p, CorrelationSum s, Order order) {
    return evaluate_point(z, p, s, order).pdf;
}

GridEvaluation evaluate_grid(std::span<const double> z, const GumbelParams& p, CorrelationSum s,
                             Order order) {
    GridEvaluation out{std::vector<double>(z.begin(), z.end()), std::vector<double>(z.size()),
                       std::vector<double>(z.size())};
    const auto count = static_cast<std::int64_t>(z.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < count; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const PointValue v = evaluate_point(z[idx], p, s, order);
        out.cdf[idx] = v.cdf;
        out.pdf[idx] = v.pdf;
    }
    return out;
}

Moments corrected_moments(const GumbelParams& p, CorrelationSum s, Order order) {
    using boost::math::quadrature::gauss_kronrod;
    const double lo = p.alpha() - 20.0 * p.beta();
    const double hi = p.alpha() + 40.0 * p.beta();
    constexpr unsigned kMaxDepth = 20;
    constexpr double kTol = 1e-12;
    const double mean = gauss_kronrod<double, 61>::integrate(
        [&](double z) { return z * corrected_pdf(z, p, s, order); }, lo, hi, kMaxDepth, kTol);
    const double var = gauss_kronrod<double, 61>::integrate(
        [&](double z) { return (z - mean) * (z - mean) * corrected_pdf(z, p, s, order); }, lo, hi,
        kMaxDepth, kTol);
    return {mean, std::sqrt(std::max(var, 0.0))};
}

ValidityReport validity_check(const GumbelParams& p, CorrelationSum s, double max_abs_eps,
                              std::span<const double> z_grid, Order order, double threshold) {
    ValidityReport report;
    report.max_abs_eps = max_abs_eps;
    report.threshold = threshold;
    report.smallness_ok = max_abs_eps <= threshold;

    const GridEvaluation grid = evaluate_grid(z_grid, p, s, order);
    const std::size_t m = grid.z.size();
    for (std::size_t k = 0; k < m; ++k) {
        const double f = grid.cdf[k];
        const bool bounded = std::isfinite(f) && f >= 0.0 && f <= 1.0;
        const bool monotone = k == 0 || !(f < grid.cdf[k - 1]);
        const bool nonnegative = std::isfinite(grid.pdf[k]) && grid.pdf[k] >= 0.0;
        report.cdf_bounded = report.cdf_bounded && bounded;
        report.cdf_monotone = report.cdf_monotone && monotone;
        report.pdf_nonnegative = report.pdf_nonnegative && nonnegative;
        if (!(bounded && monotone && nonnegative)) {
            report.z_violations.push_back(grid.z[k]);
        }
        if (k > 0 && k + 1 < m && grid.pdf[k] > 0.0 && grid.pdf[k] > grid.pdf[k - 1] &&
            grid.pdf[k] >= grid.pdf[k + 1]) {
            report.pdf_modes.push_back(grid.z[k]);
        }
    }
    return report;
}

ValidityReport validity_check(const GumbelParams& p, CorrelationSum s, const EpsilonMatrix& eps,
                              std::span<const double> z_grid, Order order, double threshold) {
    return validity_check(p, s, eps.max_abs(), z_grid, order, threshold);
}

double correlated_pdf_first_order(std::span<const double> r, const EpsilonMatrix& eps) {
    const std::size_t n = eps.n();
    if (r.size() != n) {
        throw DimensionMismatch("correlated_pdf_first_order: dim(r) must equal eps.n");
    }
    if (n > kMaxExpansionDim) {
        throw DomainError("correlated_pdf_first_order: at most 8 variables supported");
    }
    double base = 1.0;
    for (double x : r) {
        base *= normal::std_normal_pdf(x);
    }
    double correction = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                correction += eps(i, j) * r[i] * r[j];
            }
        }
    }
    return base * (1.0 + 0.5 * correction);
}

double char_fn_identity_check(std::span<const double> k, std::span<const double> mu,
                              std::span<const double> sigma, std::size_t i, std::size_t j,
                              double h) {
    if (k.size() != mu.size() || k.size() != sigma.size()) {
        throw DimensionMismatch("char_fn_identity_check: k, mu and sigma must have equal length");
    }
    if (i >= k.size() || j >= k.size()) {
        throw DimensionMismatch("char_fn_identity_check: index out of range");
    }
    if (i == j) {
        throw DomainError("char_fn_identity_check: requires i != j");
    }
    if (!(h > 1e-6 && h < 1e-3)) {
        throw DomainError("char_fn_identity_check: step must lie in (1e-6, 1e-3)");
    }
    using cplx = std::complex<double>;
    double phase = 0.0;
    double decay = 0.0;
    for (std::size_t m = 0; m < k.size(); ++m) {
        if (!(sigma[m] > 0.0)) {
            throw DomainError("char_fn_identity_check: sigma must be positive");
        }
        phase += mu[m] * k[m];
        decay += sigma[m] * sigma[m] * k[m] * k[m];
    }
    // chi(eps) = chi_0 exp(-1/2 eps k_i k_j), eps perturbing the single entry (i, j).
    const auto chi = [&](double eps) {
        return std::exp(cplx(-0.5 * decay - 0.5 * eps * k[i] * k[j], phase));
    };
    const cplx finite_difference = (chi(h) - chi(-h)) / (2.0 * h);
    const cplx analytic = -0.5 * k[i] * k[j] * chi(0.0);
    return std::abs(finite_difference - analytic);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = lo + step * static_cast<double>(k);
    }
    if (count > 1) {
        out.back() = hi;
    }
    return out;
}

}  // namespace evssta::corrections
