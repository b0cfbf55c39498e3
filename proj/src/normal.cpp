#include "evssta/normal.hpp"

#include <cmath>
#include <limits>

#include "evssta/errors.hpp"

namespace evssta::normal {

namespace {

void require_not_nan(double x, const char* what) {
    if (std::isnan(x)) {
        throw DomainError(std::string(what) + ": NaN argument");
    }
}

// Acklam's rational approximation of the lower half of Phi^-1 (p <= 0.5);
// relative error ~1e-9, polished afterwards.
double quantile_initial_guess(double p) {
    constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                            1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                            6.680131188771972e+01,  -1.328068155288572e+01};
    constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                            -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                            3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Solves Phi(x) = p for 0 < p <= 0.5 inside the bracket [-40, 0]. Halley
// steps from the rational guess; a step leaving the bracket falls back to
// bisection.
double lower_quantile(double p) {
    double lo = -40.0;
    double hi = 0.0;
    double x = quantile_initial_guess(p);
    if (!(x > lo && x < hi)) {
        x = 0.5 * (lo + hi);
    }
    for (int iter = 0; iter < 100; ++iter) {
        const double f = std_normal_cdf(x) - p;
        if (f == 0.0) {
            return x;
        }
        if (f < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        const double density = std_normal_pdf(x);
        double next;
        if (density > 0.0) {
            const double step = f / density;
            next = x - step / (1.0 + 0.5 * x * step);
        } else {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
            return next;
        }
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        x = next;
    }
    return x;
}

}  // namespace

double phi_kernel(double x) {
    require_not_nan(x, "phi_kernel");
    return std::exp(-0.5 * x * x);
}

double erf(double x) {
    require_not_nan(x, "erf");
    return std::erf(x);
}

double std_normal_pdf(double x) {
    return phi_kernel(x) / kSqrt2Pi;
}

double std_normal_cdf(double x) {
    require_not_nan(x, "std_normal_cdf");
    // erfc keeps full relative accuracy in the lower tail.
    return 0.5 * std::erfc(-x / kSqrt2);
}

double std_normal_quantile(double p) {
    require_not_nan(p, "std_normal_quantile");
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("std_normal_quantile: p must lie in (0, 1)");
    }
    if (p == 0.5) {
        return 0.0;
    }
    // 1 - p is exact for p >= 0.5.
    return p < 0.5 ? lower_quantile(p) : -lower_quantile(1.0 - p);
}

double iid_normal_pdf(std::span<const double> r, std::span<const double> mu,
                      std::span<const double> sigma) {
    if (r.size() != mu.size() || r.size() != sigma.size()) {
        throw DimensionMismatch("iid_normal_pdf: r, mu and sigma must have equal length");
    }
    double density = 1.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
        require_not_nan(r[k], "iid_normal_pdf");
        if (!(sigma[k] > 0.0)) {
            throw DomainError("iid_normal_pdf: sigma must be positive");
        }
        density *= phi_kernel((r[k] - mu[k]) / sigma[k]) / (kSqrt2Pi * sigma[k]);
    }
    return density;
}

}  // namespace evssta::normal
