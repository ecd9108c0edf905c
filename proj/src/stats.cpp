#include "votesim/stats.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/beta.hpp>

namespace votesim::stats {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(what) + ": argument must be finite");
    }
}

}  // namespace

double normal_cdf(double x) {
    require_finite(x, "normal_cdf");
    // erfc keeps full relative accuracy in the lower tail, and erfc(0) == 1.
    return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0);
}

double normal_pdf(double x) {
    require_finite(x, "normal_pdf");
    constexpr double inv_sqrt_2pi = std::numbers::inv_sqrtpi / std::numbers::sqrt2;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double positive_part_mean(double mu, double sigma) {
    require_finite(mu, "positive_part_mean");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::domain_error("positive_part_mean: sigma must be positive and finite");
    }
    const double z = mu / sigma;
    return mu * normal_cdf(z) + sigma * normal_pdf(z);
}

double negative_part_mean(double mu, double sigma) {
    require_finite(mu, "negative_part_mean");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::domain_error("negative_part_mean: sigma must be positive and finite");
    }
    const double z = mu / sigma;
    return mu * normal_cdf(-z) - sigma * normal_pdf(z);
}

double binomial_tail(std::uint64_t trials, double success_prob, std::int64_t k) {
    if (!(success_prob >= 0.0 && success_prob <= 1.0)) {
        throw std::domain_error("binomial_tail: success_prob must lie in [0, 1]");
    }
    if (k <= 0) {
        return 1.0;
    }
    const auto kk = static_cast<std::uint64_t>(k);
    if (kk > trials) {
        return 0.0;
    }
    if (success_prob == 0.0) {
        return 0.0;
    }
    if (success_prob == 1.0) {
        return 1.0;
    }
    // P(B >= k) = I_p(k, trials - k + 1)
    return boost::math::ibeta(static_cast<double>(kk), static_cast<double>(trials - kk + 1),
                              success_prob);
}

}  // namespace votesim::stats
