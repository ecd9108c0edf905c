#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "votesim/analytic.hpp"
#include "votesim/model.hpp"
#include "votesim/monte_carlo.hpp"

namespace votesim {

/// Optional replacements for a scenario's defaults.
struct ScenarioOverrides {
    std::optional<double> mu;
    std::optional<double> sigma;
    std::optional<double> alpha;
    /// Society size n (fig1..fig4).
    std::optional<std::size_t> total;
    /// fig2: size of the fixed first group. fig3/fig4: size lead of group 1.
    std::optional<std::size_t> first_group;
    /// fig5: fixed egoist count.
    std::optional<std::size_t> egoists;
    /// fig5: combined size of both groups.
    std::optional<std::size_t> group_total;
};

struct Scenario {
    std::string name;
    std::string sweep_variable;
    Environment env;
    VotingRule rule{0.5};
    std::size_t sweep_min = 0;
    std::size_t sweep_max = 0;
    std::function<SocietyComposition(std::size_t)> composition_at;
};

/// fig1: one group of x among n = 1000.
/// fig2: fixed first group of 50, second group of x, rest egoists.
/// fig3/fig4: groups of x + 50 (x + 5) and x, rest egoists.
/// fig5: n = 1500, 500 egoists, groups of x and 1000 - x, sigma = 100, alpha = 2/3.
/// Unless stated otherwise mu = -0.8, sigma = 30, alpha = 0.5.
Scenario build_scenario(std::string_view name, const ScenarioOverrides& overrides = {});

std::vector<std::string> scenario_names();

enum class Method { Approx, Exact, MonteCarlo };

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);

struct SweepResult {
    std::size_t x = 0;
    ExpectedIncrements increments;
    Method method = Method::Exact;
};

/// Evaluates the scenario at every sweep point. Approx sweeps fall back to the
/// exact engine at points where the approximation is undefined (no group or no
/// egoists) and record that per row. Monte Carlo sweeps reuse mc.seed at every
/// point.
std::vector<SweepResult> run_sweep(const Scenario& scenario, Method method,
                                   const std::optional<McConfig>& mc = std::nullopt);

/// Evaluates one composition with the given method.
ExpectedIncrements evaluate(const SocietyComposition& comp, const Environment& env,
                            const VotingRule& rule, Method method,
                            const std::optional<McConfig>& mc = std::nullopt);

enum class LandmarkKind { Argmax, Argmin, ZeroCrossing, CurveCrossing };

/// Which sign changes count as a crossing.
enum class CrossingDirection { Any, Upward, Downward };

std::string_view landmark_kind_name(LandmarkKind kind);

struct LandmarkSpec {
    LandmarkKind kind = LandmarkKind::Argmax;
    Role role = Role::Group1;
    /// Curve crossings: the curve subtracted from `role`.
    std::optional<Role> other;
    /// Zero crossings: the level subtracted from `role`.
    double level = 0.0;
    CrossingDirection direction = CrossingDirection::Any;
    /// Differences with |d| <= tolerance count as zero (no sign).
    double tolerance = 1e-12;
    std::optional<std::size_t> x_min;
    std::optional<std::size_t> x_max;
    /// Original textual form, when parsed.
    std::string label;
};

/// Parses "role:argmax", "role:argmin", "role:zero", "role:zero@level",
/// "roleA-roleB:crossing", each optionally followed by "[lo,hi]". A "+" or
/// "-" right after "zero" or "crossing" restricts to upward or downward
/// crossings of the difference.
LandmarkSpec parse_landmark_spec(std::string_view text);

struct Landmark {
    LandmarkKind kind = LandmarkKind::Argmax;
    Role role = Role::Group1;
    std::optional<Role> other;
    std::size_t x = 0;
    /// Extremum value, or for crossings the linearly interpolated crossing x.
    double value = 0.0;
    std::string label;
};

/// Argmax/argmin by exhaustive scan (ties go to the smaller x). A crossing is
/// reported at the first x whose difference has a sign opposite to the last
/// nonzero sign seen (and matching the requested direction); no landmark is
/// produced when there is none. Rows where
/// a requested role is absent are skipped. Throws if a role is absent in
/// every row.
std::vector<Landmark> detect_landmarks(const std::vector<SweepResult>& results,
                                       const std::vector<LandmarkSpec>& specs);

}  // namespace votesim
