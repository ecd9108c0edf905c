#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "votesim/random.hpp"

namespace votesim {

/// Distribution of per-participant capital increments, N(mu, sigma^2).
struct Environment {
    double mu = 0.0;
    double sigma = 1.0;

    void validate() const;
};

/// Group supports a proposal iff the total increment of its members is positive.
struct TotalPositive {};

/// Group supports a proposal iff at least floor(alpha1 * g) + 1 members gain.
struct InternalMajority {
    double alpha1 = 0.5;
};

/// Group supports a proposal iff the mean member increment exceeds threshold.
struct AverageAbove {
    double threshold = 0.0;
};

using GroupCriterion = std::variant<TotalPositive, InternalMajority, AverageAbove>;

void validate(const GroupCriterion& criterion);
std::string to_string(const GroupCriterion& criterion);

struct Group {
    std::size_t size = 0;
    GroupCriterion criterion = TotalPositive{};
};

inline constexpr std::size_t kMaxGroups = 2;

/// Egoists plus up to two groups. Participants are laid out group by group in
/// declaration order, followed by the egoists.
struct SocietyComposition {
    std::size_t egoists = 0;
    std::vector<Group> groups;

    std::size_t total() const;
    std::size_t group_size(std::size_t index) const {
        return index < groups.size() ? groups[index].size : 0;
    }
    bool all_total_positive() const;
    void validate() const;
};

/// floor(fraction * n), with products within 1e-9 (relative) of an integer
/// snapped to it so that e.g. 2/3 * 1500 yields 1000 rather than 999.
std::size_t snapped_floor(double fraction, std::size_t n);

/// alpha-majority: a proposal passes with at least floor(alpha * n) + 1 votes.
class VotingRule {
public:
    explicit VotingRule(double alpha);

    double alpha() const { return alpha_; }

    std::size_t floor_alpha_n(std::size_t n) const { return snapped_floor(alpha_, n); }
    std::size_t min_votes(std::size_t n) const { return floor_alpha_n(n) + 1; }

private:
    double alpha_;
};

enum class Role { Group1, Group2, Egoist, Random };

std::string_view role_name(Role role);
std::optional<Role> parse_role(std::string_view name);

/// One value per role; a role is absent when the composition has no members in it.
struct RoleValues {
    std::optional<double> group1;
    std::optional<double> group2;
    std::optional<double> egoist;
    double random = 0.0;

    std::optional<double> get(Role role) const;
    void set(Role role, double value);
};

struct Proposal {
    std::vector<double> increments;
};

struct StepOutcome {
    bool accepted = false;
    std::size_t votes_for = 0;
    /// Realized mean increment per role: zeros on rejection.
    RoleValues per_role_mean_increment;
};

Proposal generate_proposal(const SocietyComposition& comp, const Environment& env,
                           RandomSource& rng);

bool egoist_vote(double increment);

/// Common vote of a group given its members' increments.
bool group_vote(std::span<const double> member_increments, const GroupCriterion& criterion);

bool tally(std::size_t votes_for, std::size_t n, const VotingRule& rule);

/// Votes on a given proposal and reports the realized per-role increments.
StepOutcome evaluate_proposal(const SocietyComposition& comp, const VotingRule& rule,
                              const Proposal& proposal);

StepOutcome run_step(const SocietyComposition& comp, const Environment& env,
                     const VotingRule& rule, RandomSource& rng);

}  // namespace votesim
