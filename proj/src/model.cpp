#include "votesim/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace votesim {

void Environment::validate() const {
    if (!std::isfinite(mu)) {
        throw std::invalid_argument("mu: must be finite");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("sigma: must be positive and finite");
    }
}

void validate(const GroupCriterion& criterion) {
    if (const auto* m = std::get_if<InternalMajority>(&criterion)) {
        if (!(m->alpha1 >= 0.0 && m->alpha1 < 1.0)) {
            throw std::invalid_argument("criterion: majority threshold must lie in [0, 1)");
        }
    } else if (const auto* a = std::get_if<AverageAbove>(&criterion)) {
        if (!std::isfinite(a->threshold)) {
            throw std::invalid_argument("criterion: average threshold must be finite");
        }
    }
}

std::string to_string(const GroupCriterion& criterion) {
    std::ostringstream os;
    os.precision(17);
    if (std::holds_alternative<TotalPositive>(criterion)) {
        os << "total";
    } else if (const auto* m = std::get_if<InternalMajority>(&criterion)) {
        os << "majority=" << m->alpha1;
    } else {
        os << "average=" << std::get<AverageAbove>(criterion).threshold;
    }
    return os.str();
}

std::size_t SocietyComposition::total() const {
    std::size_t n = egoists;
    for (const auto& g : groups) {
        n += g.size;
    }
    return n;
}

bool SocietyComposition::all_total_positive() const {
    for (const auto& g : groups) {
        if (!std::holds_alternative<TotalPositive>(g.criterion)) {
            return false;
        }
    }
    return true;
}

void SocietyComposition::validate() const {
    if (groups.size() > kMaxGroups) {
        throw std::invalid_argument("group: at most two groups are supported");
    }
    for (const auto& g : groups) {
        votesim::validate(g.criterion);
    }
    if (total() == 0) {
        throw std::invalid_argument("composition: society must have at least one participant");
    }
}

VotingRule::VotingRule(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha: must lie in (0, 1)");
    }
}

std::size_t snapped_floor(double fraction, std::size_t n) {
    const double product = fraction * static_cast<double>(n);
    const double nearest = std::nearbyint(product);
    if (std::abs(product - nearest) <= 1e-9 * std::max(1.0, product)) {
        return static_cast<std::size_t>(nearest);
    }
    return static_cast<std::size_t>(std::floor(product));
}

std::string_view role_name(Role role) {
    switch (role) {
        case Role::Group1: return "group1";
        case Role::Group2: return "group2";
        case Role::Egoist: return "egoist";
        case Role::Random: return "random";
    }
    return "?";
}

std::optional<Role> parse_role(std::string_view name) {
    if (name == "group1" || name == "group") return Role::Group1;
    if (name == "group2") return Role::Group2;
    if (name == "egoist") return Role::Egoist;
    if (name == "random" || name == "society") return Role::Random;
    return std::nullopt;
}

std::optional<double> RoleValues::get(Role role) const {
    switch (role) {
        case Role::Group1: return group1;
        case Role::Group2: return group2;
        case Role::Egoist: return egoist;
        case Role::Random: return random;
    }
    return std::nullopt;
}

void RoleValues::set(Role role, double value) {
    switch (role) {
        case Role::Group1: group1 = value; break;
        case Role::Group2: group2 = value; break;
        case Role::Egoist: egoist = value; break;
        case Role::Random: random = value; break;
    }
}

Proposal generate_proposal(const SocietyComposition& comp, const Environment& env,
                           RandomSource& rng) {
    Proposal proposal;
    const std::size_t n = comp.total();
    proposal.increments.resize(n);
    for (auto& x : proposal.increments) {
        x = rng.normal(env.mu, env.sigma);
    }
    return proposal;
}

bool egoist_vote(double increment) { return increment > 0.0; }

bool group_vote(std::span<const double> member_increments, const GroupCriterion& criterion) {
    if (member_increments.empty()) {
        throw std::domain_error("group_vote: group has no members");
    }
    const double sum = std::accumulate(member_increments.begin(), member_increments.end(), 0.0);
    if (std::holds_alternative<TotalPositive>(criterion)) {
        return sum > 0.0;
    }
    if (const auto* a = std::get_if<AverageAbove>(&criterion)) {
        return sum / static_cast<double>(member_increments.size()) > a->threshold;
    }
    const double alpha1 = std::get<InternalMajority>(criterion).alpha1;
    std::size_t gaining = 0;
    for (double x : member_increments) {
        gaining += x > 0.0 ? 1 : 0;
    }
    return gaining >= snapped_floor(alpha1, member_increments.size()) + 1;
}

bool tally(std::size_t votes_for, std::size_t n, const VotingRule& rule) {
    if (votes_for > n) {
        throw std::invalid_argument("tally: more votes than participants");
    }
    return votes_for >= rule.min_votes(n);
}

StepOutcome evaluate_proposal(const SocietyComposition& comp, const VotingRule& rule,
                              const Proposal& proposal) {
    const std::size_t n = comp.total();
    if (proposal.increments.size() != n) {
        throw std::invalid_argument("proposal: length does not match the composition");
    }
    const std::span<const double> all(proposal.increments);

    StepOutcome out;
    double group_sums[kMaxGroups] = {0.0, 0.0};
    std::size_t offset = 0;
    for (std::size_t i = 0; i < comp.groups.size(); ++i) {
        const std::size_t g = comp.groups[i].size;
        if (g == 0) {
            continue;
        }
        const auto members = all.subspan(offset, g);
        group_sums[i] = std::accumulate(members.begin(), members.end(), 0.0);
        if (group_vote(members, comp.groups[i].criterion)) {
            out.votes_for += g;
        }
        offset += g;
    }
    double egoist_sum = 0.0;
    for (double x : all.subspan(offset)) {
        egoist_sum += x;
        if (egoist_vote(x)) {
            ++out.votes_for;
        }
    }
    out.accepted = tally(out.votes_for, n, rule);

    const double scale = out.accepted ? 1.0 : 0.0;
    auto& r = out.per_role_mean_increment;
    double total = 0.0;
    for (std::size_t i = 0; i < comp.groups.size(); ++i) {
        const std::size_t g = comp.groups[i].size;
        if (g == 0) {
            continue;
        }
        r.set(i == 0 ? Role::Group1 : Role::Group2,
              scale * group_sums[i] / static_cast<double>(g));
        total += group_sums[i];
    }
    if (comp.egoists > 0) {
        r.egoist = scale * egoist_sum / static_cast<double>(comp.egoists);
        total += egoist_sum;
    }
    r.random = scale * total / static_cast<double>(n);
    return out;
}

StepOutcome run_step(const SocietyComposition& comp, const Environment& env,
                     const VotingRule& rule, RandomSource& rng) {
    return evaluate_proposal(comp, rule, generate_proposal(comp, env, rng));
}

}  // namespace votesim
