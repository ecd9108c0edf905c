#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "votesim/random.hpp"
#include "votesim/stats.hpp"

using namespace votesim;

TEST_CASE("normal_cdf matches quadrature oracle") {
    CHECK(stats::normal_cdf(0.0) == 0.5);

    // Frozen from 40-digit quadrature; the in-test Simpson oracle must agree too.
    const double x1 = -0.8 / 30.0;
    const double x2 = -0.8 * std::sqrt(50.0) / 30.0;
    CHECK(stats::normal_cdf(x1) == doctest::Approx(0.48936279990942996).epsilon(1e-15));
    CHECK(stats::normal_cdf(x2) == doctest::Approx(0.42521813415617323).epsilon(1e-15));
    CHECK(std::abs(stats::normal_cdf(x1) - static_cast<double>(oracle::normal_cdf(x1))) <= 1e-12);
    CHECK(std::abs(stats::normal_cdf(x2) - static_cast<double>(oracle::normal_cdf(x2))) <= 1e-12);

    for (double x = -8.0; x <= 8.0; x += 0.37) {
        CHECK(std::abs(stats::normal_cdf(x) - static_cast<double>(oracle::normal_cdf(x))) <= 1e-12);
    }
    CHECK(stats::normal_cdf(-8.0) == doctest::Approx(6.2209605742717841e-16).epsilon(1e-12));
}

TEST_CASE("normal_cdf symmetry") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> dist(-12.0, 12.0);
    for (int i = 0; i < 5000; ++i) {
        const double x = dist(gen);
        CHECK(std::abs(stats::normal_cdf(x) + stats::normal_cdf(-x) - 1.0) <= 1e-14);
    }
}

TEST_CASE("normal_pdf values") {
    CHECK(stats::normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    CHECK(stats::normal_pdf(1.0) == doctest::Approx(0.24197072451914337).epsilon(1e-15));
    CHECK(stats::normal_pdf(-1.0) == stats::normal_pdf(1.0));
}

TEST_CASE("non-finite arguments are domain errors") {
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(stats::normal_cdf(nan), std::domain_error);
    CHECK_THROWS_AS(stats::normal_cdf(inf), std::domain_error);
    CHECK_THROWS_AS(stats::normal_pdf(-inf), std::domain_error);
    CHECK_THROWS_AS(stats::positive_part_mean(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(stats::positive_part_mean(0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(stats::binomial_tail(10, 1.5, 2), std::domain_error);
}

TEST_CASE("positive_part_mean") {
    CHECK(stats::positive_part_mean(0.0, 1.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    CHECK(stats::positive_part_mean(0.0, 7.5) ==
          doctest::Approx(7.5 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-15));
    // Quadrature of x * density over (0, inf): 11.5725235442142703...
    CHECK(stats::positive_part_mean(-0.8, 30.0) == doctest::Approx(11.57252354421427).epsilon(1e-14));
    CHECK(stats::positive_part_mean(-0.8, 30.0) ==
          doctest::Approx(static_cast<double>(oracle::positive_part(-0.8L, 30.0L))).epsilon(1e-12));

    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> mu(-50.0, 50.0), sigma(0.01, 40.0);
    for (int i = 0; i < 2000; ++i) {
        const double m = mu(gen), s = sigma(gen);
        CHECK(std::abs(stats::positive_part_mean(m, s) + stats::negative_part_mean(m, s) - m) <=
              1e-10);
    }
}

TEST_CASE("binomial_tail edge cases") {
    CHECK(stats::binomial_tail(2, 0.5, 1) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(stats::binomial_tail(17, 0.3, 0) == 1.0);
    CHECK(stats::binomial_tail(17, 0.3, -4) == 1.0);
    CHECK(stats::binomial_tail(17, 0.3, 18) == 0.0);
    CHECK(stats::binomial_tail(0, 0.3, 0) == 1.0);
    CHECK(stats::binomial_tail(0, 0.3, 1) == 0.0);
    CHECK(stats::binomial_tail(5, 0.0, 1) == 0.0);
    CHECK(stats::binomial_tail(5, 1.0, 5) == 1.0);
}

TEST_CASE("binomial_tail against direct summation") {
    // 11-term sum for (10, 0.48936, 6), frozen from 40-digit arithmetic.
    CHECK(stats::binomial_tail(10, 0.48936, 6) == doctest::Approx(0.35106290281979988).epsilon(1e-13));
    CHECK(stats::binomial_tail(10, 0.48936, 6) ==
          doctest::Approx(static_cast<double>(oracle::binomial_tail(10, 0.48936L, 6))).epsilon(1e-12));

    std::mt19937_64 gen(99);
    std::uniform_int_distribution<std::uint64_t> trials(1, 3000);
    std::uniform_real_distribution<double> prob(0.01, 0.99);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t n = trials(gen);
        const double p = prob(gen);
        const auto centre = static_cast<std::int64_t>(p * static_cast<double>(n));
        for (std::int64_t k : {centre - 3, centre, centre + 5, std::int64_t{1}}) {
            const double expected = static_cast<double>(oracle::binomial_tail(n, p, k));
            // Relative accuracy where the tail is not vanishingly small.
            if (expected > 1e-200) {
                CHECK(stats::binomial_tail(n, p, k) == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("binomial_tail differences are the pmf") {
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<std::uint64_t> trials(1, 1000);
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const auto n = trials(gen);
        const double p = prob(gen);
        double previous = stats::binomial_tail(n, p, 0);
        for (std::int64_t k = 0; k <= static_cast<std::int64_t>(n); ++k) {
            const double next = stats::binomial_tail(n, p, k + 1);
            CHECK(previous - next >= -1e-12);
            previous = next;
        }
    }
}

TEST_CASE("RandomSource determinism and stream separation") {
    RandomSource a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a();
        CHECK(x == b());
        differs_c |= x != c();
        differs_d |= x != d();
    }
    CHECK(differs_c);
    CHECK(differs_d);

    RandomSource n1(1, 0), n2(1, 0);
    for (int i = 0; i < 1000; ++i) {
        CHECK(n1.normal(0.0, 1.0) == n2.normal(0.0, 1.0));
    }
}

TEST_CASE("RandomSource neighbouring streams are uncorrelated") {
    // Correlation of paired uniforms across adjacent stream ids.
    constexpr int pairs = 200000;
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (int t = 0; t < pairs; ++t) {
        RandomSource s0(9, static_cast<std::uint64_t>(t));
        RandomSource s1(9, static_cast<std::uint64_t>(t) + 1);
        const double x = s0.uniform(), y = s1.uniform();
        sx += x, sy += y, sxy += x * y, sxx += x * x, syy += y * y;
    }
    const double n = pairs;
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double corr = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
    CHECK(std::abs(corr) < 4.0 / std::sqrt(n));
    CHECK(std::abs(sx / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("RandomSource normal moments") {
    RandomSource rng(2024, 0);
    constexpr int draws = 400000;
    double s = 0, ss = 0;
    for (int i = 0; i < draws; ++i) {
        const double x = rng.normal(5.0, 2.0);
        s += x, ss += x * x;
    }
    const double mean = s / draws;
    const double var = ss / draws - mean * mean;
    CHECK(std::abs(mean - 5.0) < 4.0 * 2.0 / std::sqrt(draws));
    CHECK(std::abs(var - 4.0) < 4.0 * 4.0 * std::sqrt(2.0 / draws));
}
