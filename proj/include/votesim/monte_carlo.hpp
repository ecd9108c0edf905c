#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "votesim/analytic.hpp"
#include "votesim/model.hpp"

namespace votesim {

struct McConfig {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    /// Threads used; results do not depend on it.
    unsigned workers = 1;

    void validate() const;
};

/// Trials are processed in fixed blocks of this many; partial statistics are
/// merged in block order so the output is independent of the worker count.
inline constexpr std::uint64_t kTrialBlock = 2048;

/// Sample means of realized per-role increments over mc.trials proposals,
/// trial t drawing from RandomSource(mc.seed, t). Standard errors are
/// sample-std / sqrt(trials) and require trials >= 2.
ExpectedIncrements estimate_increments(const SocietyComposition& comp, const Environment& env,
                                       const VotingRule& rule, const McConfig& mc);

struct InitialCapital {
    double group1 = 0.0;
    double group2 = 0.0;
    double egoist = 0.0;
};

struct TrajectoryRecord {
    std::size_t step_index = 0;
    /// Mean capital of each role after the step.
    RoleValues per_role_cumulative_capital;
    bool accepted = false;
};

/// Runs `steps` consecutive votes; step t draws from RandomSource(mc.seed, t).
std::vector<TrajectoryRecord> simulate_trajectory(const SocietyComposition& comp,
                                                  const Environment& env, const VotingRule& rule,
                                                  std::size_t steps, const InitialCapital& initial,
                                                  const McConfig& mc);

}  // namespace votesim
