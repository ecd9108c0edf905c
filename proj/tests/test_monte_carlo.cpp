#include <doctest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "votesim/analytic.hpp"
#include "votesim/monte_carlo.hpp"

using namespace votesim;

namespace {

bool bit_identical(const std::optional<double>& a, const std::optional<double>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || std::memcmp(&*a, &*b, sizeof(double)) == 0;
}

bool bit_identical(const ExpectedIncrements& x, const ExpectedIncrements& y) {
    for (Role r : {Role::Group1, Role::Group2, Role::Egoist, Role::Random}) {
        if (!bit_identical(x.mean.get(r), y.mean.get(r))) return false;
        if (!bit_identical(x.std_error->get(r), y.std_error->get(r))) return false;
    }
    return bit_identical(x.acceptance_rate, y.acceptance_rate);
}

void within_se(const ExpectedIncrements& mc, const ExpectedIncrements& exact, double k) {
    for (Role r : {Role::Group1, Role::Group2, Role::Egoist, Role::Random}) {
        const auto e = exact.mean.get(r);
        if (!e) continue;
        CAPTURE(role_name(r));
        CHECK(std::abs(*mc.mean.get(r) - *e) <= k * *mc.std_error->get(r));
    }
}

}  // namespace

TEST_CASE("everything accepted: no selection effect") {
    const SocietyComposition comp{20, {Group{10}, Group{5}}};
    const Environment env{5.0, 1.0};
    const McConfig mc{20000, 3, 1};
    const auto r = estimate_increments(comp, env, VotingRule(0.5), mc);
    CHECK(*r.acceptance_rate == 1.0);
    CHECK(std::abs(*r.mean.group1 - 5.0) <= 4.0 * 1.0 / std::sqrt(10.0 * 20000));
    CHECK(std::abs(*r.mean.group2 - 5.0) <= 4.0 * 1.0 / std::sqrt(5.0 * 20000));
    CHECK(std::abs(*r.mean.egoist - 5.0) <= 4.0 * 1.0 / std::sqrt(20.0 * 20000));
}

TEST_CASE("worker count does not change the estimate") {
    const SocietyComposition comp{60, {Group{25}, Group{15}}};
    const Environment env{-0.4, 3.0};
    const VotingRule rule(0.5);
    const auto one = estimate_increments(comp, env, rule, McConfig{50001, 77, 1});
    for (unsigned workers : {2u, 3u, 8u}) {
        CHECK(bit_identical(one, estimate_increments(comp, env, rule, McConfig{50001, 77, workers})));
    }
    // A different seed gives a different sample.
    CHECK_FALSE(bit_identical(one, estimate_increments(comp, env, rule, McConfig{50001, 78, 1})));
}

TEST_CASE("estimate agrees with the exact engine") {
    SUBCASE("small society") {
        const SocietyComposition comp{30, {Group{12}, Group{7}}};
        const Environment env{-0.3, 2.0};
        const VotingRule rule(2.0 / 3.0);
        const auto mc = estimate_increments(comp, env, rule, McConfig{200000, 11, 1});
        within_se(mc, exact_increments(comp, env, rule), 4.0);
        // Acceptance rate against its binomial standard deviation.
        const double r = *exact_increments(comp, env, rule).acceptance_rate;
        CHECK(std::abs(*mc.acceptance_rate - r) <= 4.0 * std::sqrt(r * (1 - r) / 200000));
    }
    SUBCASE("fig1 society at g = 50, 10^6 trials") {
        const SocietyComposition comp{950, {Group{50}}};
        const Environment env{-0.8, 30.0};
        const VotingRule rule(0.5);
        const auto mc = estimate_increments(comp, env, rule, McConfig{1000000, 2026, 1});
        within_se(mc, exact_single_group(comp, env, rule), 4.0);
    }
}

TEST_CASE("standard errors are calibrated") {
    const SocietyComposition comp{14, {Group{6}}};
    const Environment env{-0.5, 3.0};
    const VotingRule rule(0.5);
    const auto exact = exact_increments(comp, env, rule);
    int covered[3] = {0, 0, 0};
    constexpr int runs = 200;
    for (int seed = 0; seed < runs; ++seed) {
        const auto mc = estimate_increments(comp, env, rule, McConfig{4000, 1000u + seed, 1});
        int i = 0;
        for (Role r : {Role::Group1, Role::Egoist, Role::Random}) {
            covered[i++] += std::abs(*mc.mean.get(r) - *exact.mean.get(r)) <= 2.0 * *mc.std_error->get(r);
        }
    }
    for (int c : covered) CHECK(c >= 0.9 * runs);
}

TEST_CASE("average-above-zero and total-positive groups vote identically") {
    const Environment env{-0.2, 1.5};
    const VotingRule rule(0.5);
    const McConfig mc{30000, 5, 1};
    const auto total = estimate_increments(SocietyComposition{25, {Group{10, TotalPositive{}}}}, env,
                                           rule, mc);
    const auto average = estimate_increments(
        SocietyComposition{25, {Group{10, AverageAbove{0.0}}}}, env, rule, mc);
    CHECK(bit_identical(total, average));

    // Internal-majority groups run as well; a stricter internal rule cannot make
    // the group accept more often.
    const auto loose = estimate_increments(
        SocietyComposition{25, {Group{10, InternalMajority{0.2}}}}, env, rule, mc);
    const auto strict = estimate_increments(
        SocietyComposition{25, {Group{10, InternalMajority{0.8}}}}, env, rule, mc);
    CHECK(*strict.acceptance_rate <= *loose.acceptance_rate);
}

TEST_CASE("estimate preconditions") {
    CHECK_THROWS_AS(estimate_increments(SocietyComposition{3, {}}, Environment{0, 1},
                                        VotingRule(0.5), McConfig{0, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_increments(SocietyComposition{3, {}}, Environment{0, 1},
                                        VotingRule(0.5), McConfig{10, 1, 0}),
                    std::invalid_argument);
}

TEST_CASE("trajectory") {
    const SocietyComposition comp{30, {Group{10}, Group{5}}};
    const VotingRule rule(0.5);

    SUBCASE("zero steps") {
        CHECK(simulate_trajectory(comp, Environment{0, 1}, rule, 0, {}, McConfig{}).empty());
    }
    SUBCASE("hostile environment keeps the status quo") {
        const InitialCapital initial{1.0, 2.0, 3.0};
        const auto records =
            simulate_trajectory(comp, Environment{-10.0, 1.0}, rule, 100, initial, McConfig{1, 4, 1});
        REQUIRE(records.size() == 100);
        for (const auto& rec : records) {
            CHECK_FALSE(rec.accepted);
            CHECK(*rec.per_role_cumulative_capital.group1 == 1.0);
            CHECK(*rec.per_role_cumulative_capital.group2 == 2.0);
            CHECK(*rec.per_role_cumulative_capital.egoist == 3.0);
            CHECK(rec.per_role_cumulative_capital.random == doctest::Approx((10 + 10 + 90) / 45.0));
        }
    }
    SUBCASE("capital moves only on accepted steps and tracks the expectation") {
        const Environment env{-0.2, 2.0};
        constexpr std::size_t steps = 100000;
        const auto records = simulate_trajectory(comp, env, rule, steps, {}, McConfig{1, 21, 1});
        for (std::size_t t = 1; t < records.size(); ++t) {
            if (!records[t].accepted) {
                CHECK(records[t].per_role_cumulative_capital.random ==
                      records[t - 1].per_role_cumulative_capital.random);
            }
        }
        const auto est = estimate_increments(comp, env, rule, McConfig{steps, 22, 1});
        const auto& last = records.back().per_role_cumulative_capital;
        for (Role r : {Role::Group1, Role::Group2, Role::Egoist, Role::Random}) {
            const double per_step = *last.get(r) / static_cast<double>(steps);
            const double se = *est.std_error->get(r);
            CAPTURE(role_name(r));
            CHECK(std::abs(per_step - *est.mean.get(r)) <= 4.0 * std::sqrt(2.0) * se);
        }
        // Same seed discipline: step t of a trajectory is trial t of an estimate.
        const auto same = estimate_increments(comp, env, rule, McConfig{steps, 21, 1});
        CHECK(last.random / steps == doctest::Approx(*same.mean.get(Role::Random)).epsilon(1e-9));
    }
}
