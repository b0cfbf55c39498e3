#ifndef EVSSTA_GUMBEL_HPP
#define EVSSTA_GUMBEL_HPP

#include <cstdint>

namespace evssta::gumbel {

inline constexpr double kEulerGamma = 0.5772156649015329;

// Location/scale of the limiting Gumbel law for the maximum of n IID
// standard normals:
//   alpha = Phi^-1(1 - 1/n),  beta = sqrt(2 pi) / (n * phi(alpha)).
class GumbelParams {
public:
    // Throws DomainError for n < 2.
    static GumbelParams from_count(std::int64_t n);

    [[nodiscard]] std::int64_t n() const noexcept { return n_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }

private:
    GumbelParams(std::int64_t n, double alpha, double beta)
        : n_(n), alpha_(alpha), beta_(beta) {}

    std::int64_t n_;
    double alpha_;
    double beta_;
};

struct GumbelMoments {
    double mean;
    double std;
};

GumbelParams scaling_constants(std::int64_t n);

// exp(-exp(-(z - alpha)/beta)); exactly 0 when (z - alpha)/beta < -40.
double gumbel_cdf(double z, const GumbelParams& p);

double gumbel_pdf(double z, const GumbelParams& p);

// mean = alpha + gamma beta, std = pi beta / sqrt(6)
GumbelMoments gumbel_moments(const GumbelParams& p);

// Exact law of the maximum of n IID standard normals, Phi(z)^n, and its
// density. Used to measure how far the asymptotic Gumbel law is off at
// finite n.
double iid_max_cdf(double z, std::int64_t n);
double iid_max_pdf(double z, std::int64_t n);

}  // namespace evssta::gumbel

#endif  // EVSSTA_GUMBEL_HPP
