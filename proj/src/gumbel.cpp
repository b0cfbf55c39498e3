#include "evssta/gumbel.hpp"

#include <cmath>

#include "evssta/errors.hpp"
#include "evssta/normal.hpp"

namespace evssta::gumbel {

namespace {
constexpr double kUnderflowCut = -40.0;
}

GumbelParams GumbelParams::from_count(std::int64_t n) {
    if (n < 2) {
        throw DomainError("scaling_constants: n must be >= 2");
    }
    // Phi^-1(1 - 1/n) written as -Phi^-1(1/n) to avoid cancellation for large n.
    const double alpha = n == 2 ? 0.0 : -normal::std_normal_quantile(1.0 / static_cast<double>(n));
    const double beta = normal::kSqrt2Pi / (static_cast<double>(n) * normal::phi_kernel(alpha));
    return GumbelParams(n, alpha, beta);
}

GumbelParams scaling_constants(std::int64_t n) {
    return GumbelParams::from_count(n);
}

double gumbel_cdf(double z, const GumbelParams& p) {
    const double u = (z - p.alpha()) / p.beta();
    if (u < kUnderflowCut) {
        return 0.0;
    }
    return std::exp(-std::exp(-u));
}

double gumbel_pdf(double z, const GumbelParams& p) {
    const double u = (z - p.alpha()) / p.beta();
    if (u < kUnderflowCut) {
        return 0.0;
    }
    return std::exp(-std::exp(-u) - u) / p.beta();
}

GumbelMoments gumbel_moments(const GumbelParams& p) {
    return {p.alpha() + kEulerGamma * p.beta(), normal::kPi / std::sqrt(6.0) * p.beta()};
}

double iid_max_cdf(double z, std::int64_t n) {
    return std::pow(normal::std_normal_cdf(z), static_cast<double>(n));
}

double iid_max_pdf(double z, std::int64_t n) {
    const double nd = static_cast<double>(n);
    return nd * std::pow(normal::std_normal_cdf(z), nd - 1.0) * normal::std_normal_pdf(z);
}

}  // namespace evssta::gumbel
