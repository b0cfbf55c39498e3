#ifndef EVSSTA_NORMAL_HPP
#define EVSSTA_NORMAL_HPP

#include <span>

// Scalar special functions of the standard normal distribution.
//
// The kernel phi(x) = exp(-x^2/2) is deliberately unnormalized; the density
// of N(0,1) is phi(x) / sqrt(2 pi). All functions reject NaN with DomainError.

namespace evssta::normal {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;

// exp(-x^2/2)
double phi_kernel(double x);

double erf(double x);

// phi_kernel(x) / sqrt(2 pi)
double std_normal_pdf(double x);

// Phi(x); accepts +-infinity.
double std_normal_cdf(double x);

// Inverse of Phi on (0, 1). Throws DomainError for p <= 0 or p >= 1.
double std_normal_quantile(double p);

// Product of univariate normal densities N(r_k | mu_k, sigma_k^2).
double iid_normal_pdf(std::span<const double> r, std::span<const double> mu,
                      std::span<const double> sigma);

}  // namespace evssta::normal

#endif  // EVSSTA_NORMAL_HPP
