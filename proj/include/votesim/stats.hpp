#pragma once

#include <cstdint>

namespace votesim::stats {

/// Standard normal distribution function P(Z <= x).
/// Throws std::domain_error for non-finite input.
double normal_cdf(double x);

/// Standard normal density exp(-x^2/2)/sqrt(2*pi).
double normal_pdf(double x);

/// E[X * 1{X > 0}] for X ~ N(mu, sigma^2).
double positive_part_mean(double mu, double sigma);

/// E[X * 1{X <= 0}] for X ~ N(mu, sigma^2); complements positive_part_mean to mu.
double negative_part_mean(double mu, double sigma);

/// P(B >= k) for B ~ Binomial(trials, success_prob). Any integer k is accepted:
/// k <= 0 gives 1 and k > trials gives 0.
double binomial_tail(std::uint64_t trials, double success_prob, std::int64_t k);

}  // namespace votesim::stats
