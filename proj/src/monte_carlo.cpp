#include "votesim/monte_carlo.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace votesim {

namespace {

// Running mean and sum of squared deviations (Welford / Chan et al.).
struct Moments {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        count += 1.0;
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.count == 0.0) return;
        if (count == 0.0) {
            *this = other;
            return;
        }
        const double total = count + other.count;
        const double delta = other.mean - mean;
        mean += delta * (other.count / total);
        m2 += other.m2 + delta * delta * (count * other.count / total);
        count = total;
    }

    double std_error() const {
        return count > 1.0 ? std::sqrt(m2 / (count - 1.0) / count) : 0.0;
    }
};

constexpr std::array<Role, 4> kRoles = {Role::Group1, Role::Group2, Role::Egoist, Role::Random};

struct BlockStats {
    std::array<Moments, 4> roles;
    Moments accepted;
};

BlockStats run_block(const SocietyComposition& comp, const Environment& env,
                     const VotingRule& rule, std::uint64_t seed, std::uint64_t first,
                     std::uint64_t last) {
    BlockStats stats;
    Proposal proposal;
    proposal.increments.resize(comp.total());
    for (std::uint64_t t = first; t < last; ++t) {
        RandomSource rng(seed, t);
        for (auto& x : proposal.increments) {
            x = rng.normal(env.mu, env.sigma);
        }
        const StepOutcome step = evaluate_proposal(comp, rule, proposal);
        for (std::size_t r = 0; r < kRoles.size(); ++r) {
            if (const auto v = step.per_role_mean_increment.get(kRoles[r])) {
                stats.roles[r].add(*v);
            }
        }
        stats.accepted.add(step.accepted ? 1.0 : 0.0);
    }
    return stats;
}

}  // namespace

void McConfig::validate() const {
    if (trials < 1) {
        throw std::invalid_argument("trials: must be at least 1");
    }
    if (workers < 1) {
        throw std::invalid_argument("workers: must be at least 1");
    }
}

ExpectedIncrements estimate_increments(const SocietyComposition& comp, const Environment& env,
                                       const VotingRule& rule, const McConfig& mc) {
    comp.validate();
    env.validate();
    mc.validate();

    const std::uint64_t blocks = (mc.trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<BlockStats> partial(blocks);
    std::atomic<std::uint64_t> next{0};
    const auto worker = [&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) {
            const std::uint64_t first = b * kTrialBlock;
            const std::uint64_t last = std::min(mc.trials, first + kTrialBlock);
            partial[b] = run_block(comp, env, rule, mc.seed, first, last);
        }
    };
    const auto threads = static_cast<unsigned>(std::min<std::uint64_t>(mc.workers, blocks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }

    BlockStats total;
    for (const auto& block : partial) {
        for (std::size_t r = 0; r < kRoles.size(); ++r) {
            total.roles[r].merge(block.roles[r]);
        }
        total.accepted.merge(block.accepted);
    }

    ExpectedIncrements out;
    RoleValues se;
    for (std::size_t r = 0; r < kRoles.size(); ++r) {
        if (total.roles[r].count == 0.0) continue;
        out.mean.set(kRoles[r], total.roles[r].mean);
        se.set(kRoles[r], total.roles[r].std_error());
    }
    out.std_error = se;
    out.acceptance_rate = total.accepted.mean;
    out.acceptance_rate_se = total.accepted.std_error();
    return out;
}

std::vector<TrajectoryRecord> simulate_trajectory(const SocietyComposition& comp,
                                                  const Environment& env, const VotingRule& rule,
                                                  std::size_t steps, const InitialCapital& initial,
                                                  const McConfig& mc) {
    comp.validate();
    env.validate();

    const std::size_t n = comp.total();
    RoleValues capital;
    if (comp.group_size(0) > 0) capital.group1 = initial.group1;
    if (comp.group_size(1) > 0) capital.group2 = initial.group2;
    if (comp.egoists > 0) capital.egoist = initial.egoist;
    capital.random = (static_cast<double>(comp.group_size(0)) * initial.group1 +
                      static_cast<double>(comp.group_size(1)) * initial.group2 +
                      static_cast<double>(comp.egoists) * initial.egoist) /
                     static_cast<double>(n);

    std::vector<TrajectoryRecord> records;
    records.reserve(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        RandomSource rng(mc.seed, t);
        const StepOutcome step = run_step(comp, env, rule, rng);
        if (step.accepted) {
            for (const Role role : kRoles) {
                if (const auto v = step.per_role_mean_increment.get(role)) {
                    capital.set(role, *capital.get(role) + *v);
                }
            }
        }
        records.push_back({t, capital, step.accepted});
    }
    return records;
}

}  // namespace votesim
