#include "votesim/scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace votesim {

namespace {

constexpr double kDefaultMu = -0.8;
constexpr double kDefaultSigma = 30.0;
constexpr double kDefaultAlpha = 0.5;

Environment make_env(const ScenarioOverrides& o, double sigma_default) {
    Environment env{o.mu.value_or(kDefaultMu), o.sigma.value_or(sigma_default)};
    env.validate();
    return env;
}

Scenario growing_pair(std::string name, const ScenarioOverrides& o, std::size_t default_lead) {
    const std::size_t n = o.total.value_or(1000);
    const std::size_t lead = o.first_group.value_or(default_lead);
    if (lead > n) {
        throw std::invalid_argument("first_group: lead exceeds the society size");
    }
    Scenario s;
    s.name = std::move(name);
    s.sweep_variable = "size of the second group (first group is larger by " +
                       std::to_string(lead) + ")";
    s.env = make_env(o, kDefaultSigma);
    s.rule = VotingRule(o.alpha.value_or(kDefaultAlpha));
    s.sweep_min = 0;
    s.sweep_max = (n - lead) / 2;
    s.composition_at = [n, lead](std::size_t x) {
        return SocietyComposition{n - lead - 2 * x, {Group{x + lead}, Group{x}}};
    };
    return s;
}

}  // namespace

std::vector<std::string> scenario_names() { return {"fig1", "fig2", "fig3", "fig4", "fig5"}; }

Scenario build_scenario(std::string_view name, const ScenarioOverrides& o) {
    if (name == "fig1") {
        const std::size_t n = o.total.value_or(1000);
        if (n == 0) throw std::invalid_argument("total: must be at least 1");
        Scenario s;
        s.name = "fig1";
        s.sweep_variable = "group size";
        s.env = make_env(o, kDefaultSigma);
        s.rule = VotingRule(o.alpha.value_or(kDefaultAlpha));
        s.sweep_max = n;
        s.composition_at = [n](std::size_t x) {
            return SocietyComposition{n - x, {Group{x}}};
        };
        return s;
    }
    if (name == "fig2") {
        const std::size_t n = o.total.value_or(1000);
        const std::size_t first = o.first_group.value_or(50);
        if (first > n) throw std::invalid_argument("first_group: exceeds the society size");
        Scenario s;
        s.name = "fig2";
        s.sweep_variable = "size of the second group (first group fixed at " +
                           std::to_string(first) + ")";
        s.env = make_env(o, kDefaultSigma);
        s.rule = VotingRule(o.alpha.value_or(kDefaultAlpha));
        s.sweep_max = n - first;
        s.composition_at = [n, first](std::size_t x) {
            return SocietyComposition{n - first - x, {Group{first}, Group{x}}};
        };
        return s;
    }
    if (name == "fig3") return growing_pair("fig3", o, 50);
    if (name == "fig4") return growing_pair("fig4", o, 5);
    if (name == "fig5") {
        const std::size_t egoists = o.egoists.value_or(500);
        const std::size_t groups = o.group_total.value_or(1000);
        if (egoists + groups == 0) throw std::invalid_argument("total: must be at least 1");
        Scenario s;
        s.name = "fig5";
        s.sweep_variable = "size of the first group (groups total " + std::to_string(groups) + ")";
        s.env = make_env(o, 100.0);
        s.rule = VotingRule(o.alpha.value_or(2.0 / 3.0));
        s.sweep_max = groups;
        s.composition_at = [egoists, groups](std::size_t x) {
            return SocietyComposition{egoists, {Group{x}, Group{groups - x}}};
        };
        return s;
    }
    throw std::invalid_argument("scenario: unknown name '" + std::string(name) + "'");
}

std::string_view method_name(Method method) {
    switch (method) {
        case Method::Approx: return "approx";
        case Method::Exact: return "exact";
        case Method::MonteCarlo: return "mc";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) {
    if (name == "approx") return Method::Approx;
    if (name == "exact") return Method::Exact;
    if (name == "mc" || name == "monte_carlo") return Method::MonteCarlo;
    return std::nullopt;
}

ExpectedIncrements evaluate(const SocietyComposition& comp, const Environment& env,
                            const VotingRule& rule, Method method,
                            const std::optional<McConfig>& mc) {
    switch (method) {
        case Method::Approx: return approx_single_group(comp, env, rule);
        case Method::Exact: return exact_increments(comp, env, rule);
        case Method::MonteCarlo:
            if (!mc) throw std::invalid_argument("method: mc requires a Monte Carlo configuration");
            return estimate_increments(comp, env, rule, *mc);
    }
    throw std::invalid_argument("method: unknown");
}

std::vector<SweepResult> run_sweep(const Scenario& scenario, Method method,
                                   const std::optional<McConfig>& mc) {
    if (method == Method::Approx) {
        const auto probe = scenario.composition_at(scenario.sweep_min);
        if (probe.groups.size() != 1 || !probe.all_total_positive()) {
            throw std::invalid_argument("method: approx applies to single-group scenarios only");
        }
    }
    if (method == Method::MonteCarlo && !mc) {
        throw std::invalid_argument("method: mc requires a Monte Carlo configuration");
    }
    std::vector<SweepResult> rows;
    rows.reserve(scenario.sweep_max - scenario.sweep_min + 1);
    for (std::size_t x = scenario.sweep_min; x <= scenario.sweep_max; ++x) {
        const SocietyComposition comp = scenario.composition_at(x);
        Method used = method;
        if (method == Method::Approx && (comp.groups[0].size == 0 || comp.egoists == 0)) {
            used = Method::Exact;
        }
        rows.push_back({x, evaluate(comp, scenario.env, scenario.rule, used, mc), used});
    }
    return rows;
}

std::string_view landmark_kind_name(LandmarkKind kind) {
    switch (kind) {
        case LandmarkKind::Argmax: return "argmax";
        case LandmarkKind::Argmin: return "argmin";
        case LandmarkKind::ZeroCrossing: return "zero_crossing";
        case LandmarkKind::CurveCrossing: return "curve_crossing";
    }
    return "?";
}

namespace {

Role require_role(std::string_view name, std::string_view text) {
    if (auto role = parse_role(name)) return *role;
    throw std::invalid_argument("landmarks: unknown role '" + std::string(name) + "' in '" +
                                std::string(text) + "'");
}

std::size_t parse_count(std::string_view s, std::string_view text) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("landmarks: bad bound in '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

LandmarkSpec parse_landmark_spec(std::string_view text) {
    LandmarkSpec spec;
    spec.label = std::string(text);
    std::string_view body = text;
    if (const auto open = body.find('['); open != std::string_view::npos) {
        const auto close = body.find(']', open);
        const auto comma = body.find(',', open);
        if (close == std::string_view::npos || comma == std::string_view::npos || comma > close ||
            close + 1 != body.size()) {
            throw std::invalid_argument("landmarks: malformed window in '" + std::string(text) + "'");
        }
        spec.x_min = parse_count(body.substr(open + 1, comma - open - 1), text);
        spec.x_max = parse_count(body.substr(comma + 1, close - comma - 1), text);
        body = body.substr(0, open);
    }
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("landmarks: expected role:kind in '" + std::string(text) + "'");
    }
    const std::string_view roles = body.substr(0, colon);
    std::string_view kind = body.substr(colon + 1);

    const auto take_direction = [&](std::string_view& rest) {
        if (rest.starts_with("+")) {
            spec.direction = CrossingDirection::Upward;
            rest.remove_prefix(1);
        } else if (rest.starts_with("-")) {
            spec.direction = CrossingDirection::Downward;
            rest.remove_prefix(1);
        }
    };

    if (kind.starts_with("crossing")) {
        std::string_view rest = kind.substr(8);
        take_direction(rest);
        if (!rest.empty()) {
            throw std::invalid_argument("landmarks: unknown kind '" + std::string(kind) + "'");
        }
        const auto dash = roles.find('-');
        if (dash == std::string_view::npos) {
            throw std::invalid_argument("landmarks: crossing needs roleA-roleB in '" +
                                        std::string(text) + "'");
        }
        spec.kind = LandmarkKind::CurveCrossing;
        spec.role = require_role(roles.substr(0, dash), text);
        spec.other = require_role(roles.substr(dash + 1), text);
        return spec;
    }
    spec.role = require_role(roles, text);
    if (kind == "argmax") {
        spec.kind = LandmarkKind::Argmax;
    } else if (kind == "argmin") {
        spec.kind = LandmarkKind::Argmin;
    } else if (kind.starts_with("zero")) {
        spec.kind = LandmarkKind::ZeroCrossing;
        kind.remove_prefix(4);
        take_direction(kind);
        if (!kind.empty()) {
            if (kind.front() != '@') {
                throw std::invalid_argument("landmarks: expected zero@level in '" +
                                            std::string(text) + "'");
            }
            kind.remove_prefix(1);
            const auto [ptr, ec] = std::from_chars(kind.data(), kind.data() + kind.size(), spec.level);
            if (ec != std::errc() || ptr != kind.data() + kind.size()) {
                throw std::invalid_argument("landmarks: bad level in '" + std::string(text) + "'");
            }
        }
    } else {
        throw std::invalid_argument("landmarks: unknown kind '" + std::string(kind) + "'");
    }
    return spec;
}

namespace {

std::optional<double> curve_at(const SweepResult& row, const LandmarkSpec& spec) {
    const auto a = row.increments.mean.get(spec.role);
    if (!a) return std::nullopt;
    if (spec.kind == LandmarkKind::CurveCrossing) {
        const auto b = row.increments.mean.get(*spec.other);
        if (!b) return std::nullopt;
        return *a - *b;
    }
    if (spec.kind == LandmarkKind::ZeroCrossing) {
        return *a - spec.level;
    }
    return *a;
}

int sign_of(double d, double tolerance) {
    if (std::abs(d) <= tolerance) return 0;
    return d > 0.0 ? 1 : -1;
}

}  // namespace

std::vector<Landmark> detect_landmarks(const std::vector<SweepResult>& results,
                                       const std::vector<LandmarkSpec>& specs) {
    if (results.empty()) {
        throw std::invalid_argument("detect_landmarks: no sweep rows");
    }
    std::vector<Landmark> found;
    for (const auto& spec : specs) {
        std::vector<std::pair<std::size_t, double>> curve;
        for (const auto& row : results) {
            if (spec.x_min && row.x < *spec.x_min) continue;
            if (spec.x_max && row.x > *spec.x_max) continue;
            if (const auto v = curve_at(row, spec)) {
                curve.emplace_back(row.x, *v);
            }
        }
        if (curve.empty()) {
            throw std::invalid_argument("landmarks: role absent for '" + spec.label + "'");
        }

        Landmark lm{spec.kind, spec.role, spec.other, 0, 0.0, spec.label};
        if (spec.kind == LandmarkKind::Argmax || spec.kind == LandmarkKind::Argmin) {
            auto best = curve.front();
            for (const auto& point : curve) {
                const bool better = spec.kind == LandmarkKind::Argmax ? point.second > best.second
                                                                      : point.second < best.second;
                if (better) best = point;
            }
            lm.x = best.first;
            lm.value = best.second;
            found.push_back(lm);
            continue;
        }

        int last_sign = 0;
        std::pair<std::size_t, double> last_point{};
        for (const auto& point : curve) {
            const int s = sign_of(point.second, spec.tolerance);
            if (s == 0) continue;
            const bool allowed = spec.direction == CrossingDirection::Any ||
                                 (spec.direction == CrossingDirection::Upward) == (s > 0);
            if (last_sign != 0 && s != last_sign && allowed) {
                const double x0 = static_cast<double>(last_point.first);
                const double x1 = static_cast<double>(point.first);
                lm.x = point.first;
                lm.value = x0 + (x1 - x0) * last_point.second / (last_point.second - point.second);
                found.push_back(lm);
                break;
            }
            last_sign = s;
            last_point = point;
        }
    }
    return found;
}

}  // namespace votesim
