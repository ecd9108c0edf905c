#pragma once

#include <cstddef>
#include <optional>

#include "votesim/model.hpp"

namespace votesim {

/// Expected one-step increments per role. Rejected proposals count as zero.
struct ExpectedIncrements {
    RoleValues mean;
    /// Standard errors, present for Monte Carlo estimates only.
    std::optional<RoleValues> std_error;
    std::optional<double> acceptance_rate;
    std::optional<double> acceptance_rate_se;
};

/// Every intermediate of the normal approximation for one group of size g
/// among l egoists. "alpha" terms refer to the egoist count floor(alpha*n)
/// needed when the group opposes, "gamma" terms to floor(alpha*n) - g needed
/// when it supports.
struct ApproximationTerms {
    double egoist_support = 0.0;   // p = F(mu/sigma)
    double egoist_oppose = 0.0;    // q = 1 - p
    double group_support = 0.0;    // P_G = F(mu sqrt(g)/sigma)
    double group_oppose = 0.0;     // Q_G = 1 - P_G
    double tail_alpha = 0.0;       // F_alpha
    double tail_gamma = 0.0;       // F_gamma
    double density_alpha = 0.0;    // f_alpha
    double density_gamma = 0.0;    // f_gamma
    double group_density = 0.0;    // f_G = f(mu sqrt(g)/sigma)
    double egoist_density = 0.0;   // f = f(mu/sigma)
    double gamma = 0.0;            // alpha - g/n
    long long floor_alpha_n = 0;
    long long floor_gamma_n = 0;   // floor(alpha n) - g, exact in integers
};

ApproximationTerms approximation_terms(const SocietyComposition& comp, const Environment& env,
                                       const VotingRule& rule);

/// Normal approximation of the binomial egoist vote count. Requires exactly
/// one TotalPositive group with g >= 1 and at least one egoist.
ExpectedIncrements approx_single_group(const SocietyComposition& comp, const Environment& env,
                                       const VotingRule& rule);

/// Exact expectations for one TotalPositive group (g >= 1, l >= 1).
ExpectedIncrements exact_single_group(const SocietyComposition& comp, const Environment& env,
                                      const VotingRule& rule);

/// Exact expectations for two TotalPositive groups; either size may be zero.
ExpectedIncrements exact_two_groups(const SocietyComposition& comp, const Environment& env,
                                    const VotingRule& rule);

/// Expected egoist increment in a society of n egoists and no groups.
double group_free_baseline(std::size_t n, const Environment& env, const VotingRule& rule);

/// Exact expectations for any valid composition whose groups are all
/// TotalPositive: zero, one or two groups (empty groups allowed), l >= 0.
///
/// Conditions on the joint group decisions, which are independent with
/// P(support) = F(mu sqrt(g)/sigma), and on the binomial count of supporting
/// egoists. A group member's conditional mean given its group's decision is
/// the positive/negative part mean of the group total divided by g. For the
/// egoist, its own sign is split off and the other l - 1 egoists are binomial.
ExpectedIncrements exact_increments(const SocietyComposition& comp, const Environment& env,
                                    const VotingRule& rule);

}  // namespace votesim
