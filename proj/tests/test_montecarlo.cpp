#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"

#include "evssta/errors.hpp"
#include "evssta/montecarlo.hpp"
#include "evssta/normal.hpp"
#include "evssta/rng.hpp"
#include "oracles.hpp"

using namespace evssta;

TEST_CASE("rng: Philox4x32-10 known answers") {
    using P = Philox4x32;
    CHECK(P::generate({0, 0, 0, 0}, {0, 0}) == P::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(P::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          P::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(P::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          P::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("rng: streams are reproducible and distinct") {
    RngStream a(42, 7);
    RngStream b(42, 7);
    RngStream c(42, 8);
    RngStream d(43, 7);
    int same_c = 0;
    int same_d = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto x = a();
        CHECK(x == b());
        same_c += x == c();
        same_d += x == d();
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
}

TEST_CASE("rng: uniform and normal draws") {
    RngStream r(1, 0);
    const int m = 200000;
    double sum = 0.0;
    double sum2 = 0.0;
    double umin = 1.0;
    double umax = 0.0;
    for (int k = 0; k < m; ++k) {
        const double u = r.uniform();
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        const double x = r.normal();
        sum += x;
        sum2 += x * x;
    }
    CHECK(umin > 0.0);
    CHECK(umax < 1.0);
    // 5 standard errors
    CHECK(std::abs(sum / m) < 5.0 / std::sqrt(m));
    CHECK(std::abs(sum2 / m - 1.0) < 5.0 * std::sqrt(2.0 / m));
    const double v = r.uniform(-2.0, 3.0);
    CHECK(v > -2.0);
    CHECK(v < 3.0);
}

TEST_CASE("mc: AR(1) chain is stationary with lag-d correlation rho^d") {
    const mc::Ar1Model model{400000, 0.6, 2.0};
    RngStream rng(5, 0);
    const auto x = mc::sample_ar1_chain(model, rng);
    REQUIRE(x.size() == 400000);
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    double var = 0.0;
    double lag1 = 0.0;
    double lag2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        var += (x[i] - mean) * (x[i] - mean);
        if (i >= 1) lag1 += (x[i] - mean) * (x[i - 1] - mean);
        if (i >= 2) lag2 += (x[i] - mean) * (x[i - 2] - mean);
    }
    CHECK(var / x.size() == doctest::Approx(4.0).epsilon(0.03));
    CHECK(lag1 / var == doctest::Approx(0.6).epsilon(0.02));
    CHECK(lag2 / var == doctest::Approx(0.36).epsilon(0.04));
}

TEST_CASE("mc: model and config validation") {
    CHECK_THROWS_AS((mc::Ar1Model{0, 0.5, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((mc::Ar1Model{10, 1.5, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((mc::Ar1Model{10, 0.5, 0.0}.validate()), DomainError);
    CHECK_THROWS_AS((mc::McConfig{0, 1, 1}.validate()), DomainError);
    CHECK_THROWS_AS((mc::McConfig{10, 1, 0}.validate()), DomainError);
    CHECK_NOTHROW((mc::Ar1Model{10, 1.0, 1.0}.validate()));
}

TEST_CASE("mc: maxima do not depend on the worker count") {
    const mc::Ar1Model model{100, 0.35, 1.0};
    const auto serial = mc::ref::sample_max_distribution(model, {3000, 42, 1});
    for (int workers : {1, 3, 8}) {
        const auto par = mc::sample_max_distribution(model, {3000, 42, workers});
        CHECK(par.samples == serial.samples);
        CHECK(par.mean == serial.mean);
        CHECK(par.histogram.counts == serial.histogram.counts);
    }
}

TEST_CASE("mc: maximum of one variable is the marginal") {
    const auto r = mc::sample_max_distribution({1, 0.5, 1.0}, {20000, 9, 4});
    CHECK(std::abs(r.mean) < 3.0 * r.standard_error());
    CHECK(std::abs(r.std - 1.0) < 3.0 / std::sqrt(2.0 * 20000));
}

TEST_CASE("mc: independent chain maxima follow Phi^n") {
    const auto r = mc::sample_max_distribution({10, 0.0, 1.0}, {20000, 3, 4});
    const auto exact = oracle::iid_max_moments(10);
    CHECK(std::abs(r.mean - exact.mean) < 3.0 * r.standard_error());
    const double ks = mc::ks_distance(r.ecdf, [](double z) { return std::pow(oracle::normal_cdf(z), 10); });
    CHECK(ks < mc::dkw_epsilon(r.ecdf.size(), 0.99));
}

TEST_CASE("mc: covariance square root") {
    const std::vector<double> a{4, 2, 0.6, 2, 2, 0.5, 0.6, 0.5, 1};
    const auto root = mc::factor_covariance(3, a);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += root.root[i * 3 + k] * root.root[j * 3 + k];
            CHECK(s == doctest::Approx(a[i * 3 + j]).epsilon(1e-12).scale(1.0));
        }
    }
    // Rank one: every variable is the same.
    const std::vector<double> ones(16, 1.0);
    CHECK_NOTHROW(mc::factor_covariance(4, ones));
    CHECK_THROWS_AS(mc::factor_covariance(2, std::vector<double>{1, 2, 2, 1}), NotPsdError);
    CHECK_THROWS_AS(mc::factor_covariance(2, std::vector<double>{1, 0.5, 0.4, 1}), NotPsdError);
    CHECK_THROWS_AS(mc::factor_covariance(2, std::vector<double>{1, 0.5, 0.5}), DimensionMismatch);
}

TEST_CASE("mc: multivariate maxima") {
    const std::vector<double> cov{1.0, 0.3, 0.3, 1.0};
    const std::vector<double> mean{0.5, -0.5};
    const auto serial = mc::ref::sample_multivariate_max(2, cov, {4000, 11, 1}, mean);
    const auto par = mc::sample_multivariate_max(2, cov, {4000, 11, 6}, mean);
    CHECK(par.samples == serial.samples);

    // One variable: N(3, 4).
    const auto one = mc::sample_multivariate_max(1, std::vector<double>{4.0}, {20000, 2, 4}, std::vector<double>{3.0});
    CHECK(std::abs(one.mean - 3.0) < 3.0 * one.standard_error());
    CHECK(one.std == doctest::Approx(2.0).epsilon(0.03));

    // Perfectly correlated pair: the maximum is the larger mean plus noise.
    const auto same = mc::sample_multivariate_max(2, std::vector<double>{1, 1, 1, 1}, {20000, 2, 4},
                                                  std::vector<double>{1.0, 0.0});
    CHECK(std::abs(same.mean - 1.0) < 3.0 * same.standard_error());

    CHECK_THROWS_AS(mc::sample_multivariate_max(2, cov, {100, 1, 1}, std::vector<double>{1.0}), DimensionMismatch);
}

TEST_CASE("mc: empirical statistics") {
    const std::vector<double> xs{3.0, 1.0, 2.0, 5.0, 4.0};
    const auto r = mc::empirical_stats(xs, 4);
    CHECK(r.mean == 3.0);
    CHECK(r.std == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));
    CHECK(r.ecdf == std::vector<double>{1, 2, 3, 4, 5});
    CHECK(r.ecdf_at(2.5) == 0.4);
    CHECK(r.ecdf_at(0.0) == 0.0);
    CHECK(r.ecdf_at(5.0) == 1.0);
    CHECK(r.histogram.edges.size() == 5);
    CHECK(std::accumulate(r.histogram.counts.begin(), r.histogram.counts.end(), std::int64_t{0}) == 5);
    double mass = 0.0;
    for (std::size_t b = 0; b < r.histogram.counts.size(); ++b) {
        mass += r.histogram.density(b) * (r.histogram.edges[b + 1] - r.histogram.edges[b]);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));

    const std::vector<double> constant(10, 2.0);
    const auto c = mc::empirical_stats(constant);
    CHECK(c.std == 0.0);
    CHECK(c.histogram.counts.size() >= 1);
    CHECK_THROWS_AS(mc::empirical_stats(std::vector<double>{}), EmptyInput);
}

TEST_CASE("mc: Freedman-Diaconis and DKW") {
    std::vector<double> xs(1000);
    for (int k = 0; k < 1000; ++k) xs[k] = k / 999.0;
    // IQR = 0.5, h = 2 * 0.5 / 10 = 0.1; rounding may add one bin
    const int bins = mc::freedman_diaconis_bins(xs);
    CHECK(bins >= 10);
    CHECK(bins <= 11);
    CHECK(mc::dkw_epsilon(10000, 0.99) == doctest::Approx(std::sqrt(std::log(200.0) / 20000.0)).epsilon(1e-15));
    const std::vector<double> grid{0.25, 0.5, 0.75};
    CHECK(mc::ks_distance(grid, [](double z) { return z; }) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("mc: non-IID experiment") {
    mc::NonIidConfig cfg;
    cfg.n_grid = {10, 50};
    cfg.reps = 4000;
    cfg.seed = 5;
    const auto base = mc::non_iid_experiment(cfg);
    REQUIRE(base.size() == 2);
    for (const auto& row : base) {
        const auto exact = oracle::iid_max_moments(row.n);
        CHECK(std::abs(row.mean - exact.mean) < 3.0 * row.mean_se);
    }

    cfg.workers = 8;
    cfg.delta_mu = 0.2;
    const auto a = mc::non_iid_experiment(cfg);
    cfg.workers = 1;
    const auto b = mc::non_iid_experiment(cfg);
    CHECK(a[1].mean == b[1].mean);
    CHECK(a[1].std == b[1].std);

    cfg.freeze_params = true;
    const auto frozen = mc::non_iid_experiment(cfg);
    CHECK(frozen[0].mean != b[0].mean);

    cfg.delta_sigma = 1.0;
    CHECK_THROWS_AS(mc::non_iid_experiment(cfg), DomainError);
    cfg.delta_sigma = 0.0;
    cfg.n_grid = {};
    CHECK_THROWS_AS(mc::non_iid_experiment(cfg), DomainError);
}
