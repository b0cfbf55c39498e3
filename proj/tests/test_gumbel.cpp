#include <cmath>

#include "doctest.h"

#include "evssta/errors.hpp"
#include "evssta/gumbel.hpp"
#include "oracles.hpp"

using namespace evssta;
using gumbel::GumbelParams;

namespace {

struct Frozen {
    std::int64_t n;
    double alpha, beta, mean, std;
};

// alpha = Phi^-1(1 - 1/n), beta = sqrt(2 pi)/(n phi(alpha)); mpmath, 30 digits.
constexpr Frozen kFrozen[] = {
    {2, 0.0, 1.2533141373155003, 0.7234325531010575, 1.607437833953458},
    {10, 1.2815515655446004, 0.5698059856117004, 1.6104525063943314, 0.7308045700714999},
    {100, 2.326347874040841, 0.37520436157295173, 2.5429217090801276, 0.4812182902113799},
    {1000, 3.0902323061678135, 0.29699235158923113, 3.2616609438610614, 0.380907490090141},
    {10000, 3.7190164854556806, 0.2526222398425146, 3.864833999595292, 0.3240006108051267},
};

}  // namespace

TEST_CASE("gumbel: scaling constants match frozen values") {
    for (const auto& f : kFrozen) {
        CAPTURE(f.n);
        const auto p = GumbelParams::from_count(f.n);
        CHECK(p.alpha() == doctest::Approx(f.alpha).epsilon(1e-13));
        CHECK(p.beta() == doctest::Approx(f.beta).epsilon(1e-13));
        const auto m = gumbel::gumbel_moments(p);
        CHECK(m.mean == doctest::Approx(f.mean).epsilon(1e-13));
        CHECK(m.std == doctest::Approx(f.std).epsilon(1e-13));
    }
    CHECK(GumbelParams::from_count(2).alpha() == 0.0);
}

TEST_CASE("gumbel: constants agree with the bisection oracle") {
    for (std::int64_t n : {3, 7, 50, 250, 5000, 1000000}) {
        CAPTURE(n);
        const auto p = GumbelParams::from_count(n);
        const auto ref = oracle::gumbel_ref(n);
        CHECK(p.alpha() == doctest::Approx(ref.alpha).epsilon(1e-12));
        CHECK(p.beta() == doctest::Approx(ref.beta).epsilon(1e-11));
    }
}

TEST_CASE("gumbel: n < 2 is rejected") {
    CHECK_THROWS_AS(GumbelParams::from_count(1), DomainError);
    CHECK_THROWS_AS(GumbelParams::from_count(0), DomainError);
    CHECK_THROWS_AS(GumbelParams::from_count(-5), DomainError);
}

TEST_CASE("gumbel: cdf and pdf against closed forms") {
    const auto p = GumbelParams::from_count(100);
    const auto ref = oracle::gumbel_ref(100);
    for (double z = -1.0; z <= 6.0; z += 0.173) {
        CHECK(gumbel::gumbel_cdf(z, p) == doctest::Approx(oracle::gumbel_cdf_ref(z, ref)).epsilon(1e-12));
        CHECK(gumbel::gumbel_pdf(z, p) == doctest::Approx(oracle::gumbel_pdf_ref(z, ref)).epsilon(1e-11));
    }
    // Deep lower tail underflows to exactly zero.
    CHECK(gumbel::gumbel_cdf(p.alpha() - 50.0 * p.beta(), p) == 0.0);
    CHECK(gumbel::gumbel_pdf(p.alpha() - 50.0 * p.beta(), p) == 0.0);
}

TEST_CASE("gumbel: moments match quadrature of the density") {
    for (std::int64_t n : {10, 100, 1000}) {
        const auto p = GumbelParams::from_count(n);
        const double lo = p.alpha() - 20.0 * p.beta();
        const double hi = p.alpha() + 40.0 * p.beta();
        const double mass = oracle::integrate([&](double z) { return gumbel::gumbel_pdf(z, p); }, lo, hi);
        const double mean = oracle::integrate([&](double z) { return z * gumbel::gumbel_pdf(z, p); }, lo, hi);
        const double var = oracle::integrate(
            [&](double z) { return (z - mean) * (z - mean) * gumbel::gumbel_pdf(z, p); }, lo, hi);
        const auto m = gumbel::gumbel_moments(p);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(m.mean == doctest::Approx(mean).epsilon(1e-9));
        CHECK(m.std == doctest::Approx(std::sqrt(var)).epsilon(1e-9));
    }
}

TEST_CASE("gumbel: exact iid law of the maximum") {
    for (double z : {-1.0, 0.5, 2.0, 3.5}) {
        CHECK(gumbel::iid_max_cdf(z, 10) == doctest::Approx(std::pow(oracle::normal_cdf(z), 10)).epsilon(1e-13));
        CHECK(gumbel::iid_max_pdf(z, 10) ==
              doctest::Approx(10.0 * oracle::normal_pdf(z) * std::pow(oracle::normal_cdf(z), 9)).epsilon(1e-13));
    }
    CHECK(gumbel::iid_max_cdf(0.7, 1) == doctest::Approx(oracle::normal_cdf(0.7)).epsilon(1e-15));
}

TEST_CASE("gumbel: asymptotic law approaches the exact iid law") {
    // sup |Psi_n - Phi^n| on a grid shrinks as n grows.
    double prev = 1.0;
    for (std::int64_t n : {10, 100, 1000, 10000}) {
        const auto p = GumbelParams::from_count(n);
        double worst = 0.0;
        for (double z = p.alpha() - 4.0 * p.beta(); z < p.alpha() + 10.0 * p.beta(); z += 0.01) {
            worst = std::max(worst, std::abs(gumbel::gumbel_cdf(z, p) - gumbel::iid_max_cdf(z, n)));
        }
        CHECK(worst < prev);
        prev = worst;
    }
}
