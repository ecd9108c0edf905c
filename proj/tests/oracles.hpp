#pragma once

// Reference computations for tests. Nothing here calls into the library's
// numerical code: probabilities come from quadrature and binomial tails from
// explicit enumeration, so agreement is a genuine cross-check.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using real = long double;

inline real density(real x, real mu, real sigma) {
    const real z = (x - mu) / sigma;
    return std::exp(-0.5L * z * z) / (sigma * std::sqrt(2.0L * std::numbers::pi_v<real>));
}

/// Composite Simpson rule on [a, b] with an even number of panels.
inline real simpson(const std::function<real(real)>& f, real a, real b, std::size_t panels) {
    if (panels % 2) ++panels;
    const real h = (b - a) / static_cast<real>(panels);
    real sum = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i) {
        sum += f(a + h * static_cast<real>(i)) * (i % 2 ? 4.0L : 2.0L);
    }
    return sum * h / 3.0L;
}

/// P(Z <= x) as 1/2 plus the integral of the density from 0 to x.
inline real normal_cdf(real x) {
    const auto panels = static_cast<std::size_t>(std::max<real>(2.0L, std::abs(x) * 4000.0L));
    return 0.5L + simpson([](real t) { return density(t, 0.0L, 1.0L); }, 0.0L, x, panels);
}

/// E[X 1{X > 0}] and E[X 1{X <= 0}] for X ~ N(mu, sigma^2), by quadrature over
/// +-40 sigma around the mean.
inline real positive_part(real mu, real sigma) {
    const real hi = std::max<real>(mu, 0.0L) + 40.0L * sigma;
    if (hi <= 0.0L) return 0.0L;
    return simpson([&](real x) { return x * density(x, mu, sigma); }, 0.0L, hi, 400000);
}
inline real negative_part(real mu, real sigma) {
    const real lo = std::min<real>(mu, 0.0L) - 40.0L * sigma;
    if (lo >= 0.0L) return 0.0L;
    return simpson([&](real x) { return x * density(x, mu, sigma); }, lo, 0.0L, 400000);
}
inline real prob_positive(real mu, real sigma) {
    const real hi = std::max<real>(mu, 0.0L) + 40.0L * sigma;
    if (hi <= 0.0L) return 0.0L;
    return simpson([&](real x) { return density(x, mu, sigma); }, 0.0L, hi, 400000);
}

/// P(B >= k) by summing the pmf term by term (recurrence in long double).
inline real binomial_tail(std::uint64_t n, real p, std::int64_t k) {
    if (k <= 0) return 1.0L;
    if (static_cast<std::uint64_t>(k) > n) return 0.0L;
    if (p <= 0.0L) return 0.0L;
    if (p >= 1.0L) return 1.0L;
    // Work in logs for the first term so large n does not underflow.
    const real log_q = std::log1p(-p);
    const real ratio = p / (1.0L - p);
    real log_term = static_cast<real>(n) * log_q;
    real tail = 0.0L;
    for (std::uint64_t j = 0; j <= n; ++j) {
        if (j > 0) {
            log_term += std::log(static_cast<real>(n - j + 1) / static_cast<real>(j) * ratio);
        }
        if (static_cast<std::int64_t>(j) >= k) tail += std::exp(log_term);
    }
    return tail;
}

struct Expectations {
    std::vector<real> groups;  // per group, NaN when empty
    real egoist = NAN;         // NaN when no egoists
    real random = 0.0L;
    real accept = 0.0L;
};

/// Exact expectations by enumerating every sign pattern of the egoists
/// (2^l patterns) and every joint group decision. `needed` is the minimal vote
/// count. Only practical for l <= ~14.
inline Expectations enumerate(std::size_t egoists, const std::vector<std::size_t>& groups,
                              real mu, real sigma, std::size_t needed) {
    const real p = prob_positive(mu, sigma);
    const real gain = positive_part(mu, sigma);
    const real loss = negative_part(mu, sigma);

    struct G {
        std::size_t size;
        real support, share_if_support, share_if_oppose;
    };
    std::vector<G> gs;
    for (auto g : groups) {
        if (g == 0) {
            gs.push_back({0, 0, 0, 0});
            continue;
        }
        const real m = mu * g;
        const real s = sigma * std::sqrt(static_cast<real>(g));
        gs.push_back({g, prob_positive(m, s), positive_part(m, s) / g, negative_part(m, s) / g});
    }

    Expectations out;
    out.groups.assign(groups.size(), NAN);
    std::vector<real> member(groups.size(), 0.0L);
    real egoist = 0.0L;

    const std::size_t decisions = std::size_t{1} << gs.size();
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << egoists); ++pattern) {
        real pattern_prob = 1.0L;
        std::size_t egoist_votes = 0;
        for (std::size_t e = 0; e < egoists; ++e) {
            const bool yes = (pattern >> e) & 1u;
            egoist_votes += yes;
            pattern_prob *= yes ? p : 1.0L - p;
        }
        for (std::size_t d = 0; d < decisions; ++d) {
            bool possible = true;
            std::size_t votes = egoist_votes;
            for (std::size_t i = 0; i < gs.size(); ++i) {
                if ((d >> i) & 1u) {
                    if (gs[i].size == 0) possible = false;
                    votes += gs[i].size;
                }
            }
            if (!possible || votes < needed) continue;

            auto decision_prob = [&](std::size_t skip) {
                real w = 1.0L;
                for (std::size_t i = 0; i < gs.size(); ++i) {
                    if (i == skip || gs[i].size == 0) continue;
                    w *= ((d >> i) & 1u) ? gs[i].support : 1.0L - gs[i].support;
                }
                return w;
            };
            out.accept += pattern_prob * decision_prob(gs.size());
            for (std::size_t i = 0; i < gs.size(); ++i) {
                if (gs[i].size == 0) continue;
                const real share = ((d >> i) & 1u) ? gs[i].share_if_support : gs[i].share_if_oppose;
                member[i] += pattern_prob * decision_prob(i) * share;
            }
            if (egoists > 0) {
                // Egoist 0's increment given its own sign, others weighted as usual.
                const bool own_yes = pattern & 1u;
                const real own_prob = own_yes ? p : 1.0L - p;
                egoist += pattern_prob / own_prob * decision_prob(gs.size()) *
                          (own_yes ? gain : loss);
            }
        }
    }

    std::size_t n = egoists;
    real weighted = 0.0L;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        n += gs[i].size;
        if (gs[i].size == 0) continue;
        out.groups[i] = member[i];
        weighted += member[i] * gs[i].size;
    }
    if (egoists > 0) {
        out.egoist = egoist;
        weighted += egoist * egoists;
    }
    out.random = weighted / n;
    return out;
}

}  // namespace oracle
