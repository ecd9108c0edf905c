#include "votesim/analytic.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "votesim/stats.hpp"

namespace votesim {

namespace {

using stats::binomial_tail;
using stats::normal_cdf;
using stats::normal_pdf;

void require_total_positive(const SocietyComposition& comp, const char* where) {
    if (!comp.all_total_positive()) {
        throw std::domain_error(std::string(where) +
                                ": analytic engines support the total-positive criterion only");
    }
}

void require_single_group(const SocietyComposition& comp, const char* where) {
    comp.validate();
    if (comp.groups.size() != 1) {
        throw std::domain_error(std::string(where) + ": exactly one group required");
    }
    require_total_positive(comp, where);
    if (comp.groups[0].size == 0) {
        throw std::domain_error(std::string(where) + ": group size must be at least 1");
    }
    if (comp.egoists == 0) {
        throw std::domain_error(std::string(where) + ": at least one egoist required");
    }
}

void fill_random(RoleValues& v, const SocietyComposition& comp) {
    double weighted = 0.0;
    if (v.group1) weighted += static_cast<double>(comp.group_size(0)) * *v.group1;
    if (v.group2) weighted += static_cast<double>(comp.group_size(1)) * *v.group2;
    if (v.egoist) weighted += static_cast<double>(comp.egoists) * *v.egoist;
    v.random = weighted / static_cast<double>(comp.total());
}

struct GroupTerms {
    std::size_t size = 0;
    Role role = Role::Group1;
    double support = 0.0;
    double oppose = 0.0;
    // Member's share of E[S 1{S > 0}] and E[S 1{S <= 0}], S the group total.
    double gain_if_support = 0.0;
    double gain_if_oppose = 0.0;
};

GroupTerms group_terms(std::size_t g, Role role, const Environment& env) {
    const double root = std::sqrt(static_cast<double>(g));
    const double z = env.mu * root / env.sigma;
    const double density = normal_pdf(z);
    GroupTerms t;
    t.size = g;
    t.role = role;
    t.support = normal_cdf(z);
    t.oppose = normal_cdf(-z);
    t.gain_if_support = env.mu * t.support + env.sigma * density / root;
    t.gain_if_oppose = env.mu * t.oppose - env.sigma * density / root;
    return t;
}

}  // namespace

ApproximationTerms approximation_terms(const SocietyComposition& comp, const Environment& env,
                                       const VotingRule& rule) {
    require_single_group(comp, "approximation_terms");
    env.validate();
    const std::size_t n = comp.total();
    const std::size_t g = comp.groups[0].size;
    const double l = static_cast<double>(comp.egoists);

    ApproximationTerms t;
    const double z = env.mu / env.sigma;
    const double zg = env.mu * std::sqrt(static_cast<double>(g)) / env.sigma;
    t.egoist_support = normal_cdf(z);
    t.egoist_oppose = normal_cdf(-z);
    t.group_support = normal_cdf(zg);
    t.group_oppose = normal_cdf(-zg);
    t.group_density = normal_pdf(zg);
    t.egoist_density = normal_pdf(z);
    t.gamma = rule.alpha() - static_cast<double>(g) / static_cast<double>(n);
    t.floor_alpha_n = static_cast<long long>(rule.floor_alpha_n(n));
    t.floor_gamma_n = t.floor_alpha_n - static_cast<long long>(g);

    const double spread = std::sqrt(t.egoist_support * t.egoist_oppose * l);
    if (!(spread > 0.0)) {
        throw std::domain_error("approx_single_group: egoist vote variance is zero");
    }
    const auto standardized = [&](long long floor_theta_n) {
        return (static_cast<double>(floor_theta_n) + 0.5 - t.egoist_support * l) / spread;
    };
    const double za = standardized(t.floor_alpha_n);
    const double zc = standardized(t.floor_gamma_n);
    t.tail_alpha = normal_cdf(-za);
    t.tail_gamma = normal_cdf(-zc);
    t.density_alpha = normal_pdf(za);
    t.density_gamma = normal_pdf(zc);
    return t;
}

ExpectedIncrements approx_single_group(const SocietyComposition& comp, const Environment& env,
                                       const VotingRule& rule) {
    const ApproximationTerms t = approximation_terms(comp, env, rule);
    const double g = static_cast<double>(comp.groups[0].size);
    const double l = static_cast<double>(comp.egoists);
    const double mu = env.mu;
    const double sigma = env.sigma;
    const double spread = std::sqrt(t.egoist_support * t.egoist_oppose * l);

    const double egoist_scale = sigma * t.egoist_density / spread;
    const double egoist = t.group_support * (mu * t.tail_gamma + egoist_scale * t.density_gamma) +
                          t.group_oppose * (mu * t.tail_alpha + egoist_scale * t.density_alpha);

    const double group_scale = sigma * t.group_density / std::sqrt(g);
    const double member = t.tail_gamma * (mu * t.group_support + group_scale) +
                          t.tail_alpha * (mu * t.group_oppose - group_scale);

    ExpectedIncrements out;
    out.mean.group1 = member;
    out.mean.egoist = egoist;
    fill_random(out.mean, comp);
    out.acceptance_rate = t.group_support * t.tail_gamma + t.group_oppose * t.tail_alpha;
    return out;
}

ExpectedIncrements exact_increments(const SocietyComposition& comp, const Environment& env,
                                    const VotingRule& rule) {
    comp.validate();
    env.validate();
    require_total_positive(comp, "exact_increments");

    const std::size_t n = comp.total();
    const auto needed = static_cast<std::int64_t>(rule.min_votes(n));
    const std::uint64_t l = comp.egoists;
    const double p = normal_cdf(env.mu / env.sigma);

    std::array<GroupTerms, kMaxGroups> groups{};
    std::size_t active = 0;
    for (std::size_t i = 0; i < comp.groups.size(); ++i) {
        if (comp.groups[i].size > 0) {
            groups[active++] =
                group_terms(comp.groups[i].size, i == 0 ? Role::Group1 : Role::Group2, env);
        }
    }

    // Egoist supporters needed once the groups have voted.
    const auto remaining = [&](unsigned decisions) {
        std::int64_t votes = 0;
        for (std::size_t i = 0; i < active; ++i) {
            if (decisions & (1u << i)) {
                votes += static_cast<std::int64_t>(groups[i].size);
            }
        }
        return needed - votes;
    };
    const auto decision_prob = [&](unsigned decisions, std::size_t skip) {
        double w = 1.0;
        for (std::size_t i = 0; i < active; ++i) {
            if (i == skip) continue;
            w *= (decisions & (1u << i)) ? groups[i].support : groups[i].oppose;
        }
        return w;
    };
    const unsigned combos = 1u << active;

    ExpectedIncrements out;
    double accept = 0.0;
    for (unsigned d = 0; d < combos; ++d) {
        accept += decision_prob(d, kMaxGroups) * binomial_tail(l, p, remaining(d));
    }
    out.acceptance_rate = accept;

    for (std::size_t i = 0; i < active; ++i) {
        double member = 0.0;
        for (unsigned d = 0; d < combos; ++d) {
            const double own = (d & (1u << i)) ? groups[i].gain_if_support
                                               : groups[i].gain_if_oppose;
            member += decision_prob(d, i) * own * binomial_tail(l, p, remaining(d));
        }
        out.mean.set(groups[i].role, member);
    }

    if (l > 0) {
        const double gain = stats::positive_part_mean(env.mu, env.sigma);
        const double loss = stats::negative_part_mean(env.mu, env.sigma);
        double egoist = 0.0;
        for (unsigned d = 0; d < combos; ++d) {
            const std::int64_t k = remaining(d);
            egoist += decision_prob(d, kMaxGroups) *
                      (gain * binomial_tail(l - 1, p, k - 1) + loss * binomial_tail(l - 1, p, k));
        }
        out.mean.egoist = egoist;
    }
    fill_random(out.mean, comp);
    return out;
}

ExpectedIncrements exact_single_group(const SocietyComposition& comp, const Environment& env,
                                      const VotingRule& rule) {
    require_single_group(comp, "exact_single_group");
    return exact_increments(comp, env, rule);
}

ExpectedIncrements exact_two_groups(const SocietyComposition& comp, const Environment& env,
                                    const VotingRule& rule) {
    comp.validate();
    if (comp.groups.size() != 2) {
        throw std::domain_error("exact_two_groups: exactly two groups required");
    }
    require_total_positive(comp, "exact_two_groups");
    return exact_increments(comp, env, rule);
}

double group_free_baseline(std::size_t n, const Environment& env, const VotingRule& rule) {
    if (n == 0) {
        throw std::domain_error("group_free_baseline: n must be at least 1");
    }
    return *exact_increments(SocietyComposition{n, {}}, env, rule).mean.egoist;
}

}  // namespace votesim
