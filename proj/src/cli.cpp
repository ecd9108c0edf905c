#include "votesim/cli.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "votesim/analytic.hpp"
#include "votesim/report.hpp"

namespace votesim::cli {

namespace {

// Raised for invalid configuration; mapped to exit status 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

nlohmann::json group_json(const Group& g) {
    return {{"size", g.size}, {"criterion", to_string(g.criterion)}};
}

GroupCriterion parse_criterion(const std::string& text) {
    if (text.empty() || text == "total") return TotalPositive{};
    const auto eq = text.find('=');
    const std::string name = text.substr(0, eq);
    if (eq == std::string::npos) {
        throw ConfigError("group: criterion '" + text + "' needs a value (e.g. majority=0.6)");
    }
    double value = 0.0;
    try {
        std::size_t used = 0;
        value = std::stod(text.substr(eq + 1), &used);
        if (used != text.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw ConfigError("group: bad criterion value in '" + text + "'");
    }
    if (name == "majority") return InternalMajority{value};
    if (name == "average") return AverageAbove{value};
    throw ConfigError("group: unknown criterion '" + name + "'");
}

template <typename T>
void read_optional(const nlohmann::json& j, const char* key, std::optional<T>& into) {
    if (j.contains(key) && !j.at(key).is_null()) into = j.at(key).get<T>();
}

}  // namespace

Group parse_group(const std::string& text) {
    const auto colon = text.find(':');
    Group g;
    try {
        std::size_t used = 0;
        const std::string size = text.substr(0, colon);
        const long long parsed = std::stoll(size, &used);
        if (used != size.size() || parsed < 0) throw std::invalid_argument("size");
        g.size = static_cast<std::size_t>(parsed);
    } catch (const std::exception&) {
        throw ConfigError("group: bad size in '" + text + "'");
    }
    if (colon != std::string::npos) {
        std::string crit = text.substr(colon + 1);
        if (crit.starts_with("criterion=")) crit = crit.substr(10);
        g.criterion = parse_criterion(crit);
    }
    return g;
}

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    j["command"] = c.command;
    const auto put = [&j](const char* key, const auto& opt) {
        if (opt) j[key] = *opt;
    };
    put("scenario", c.scenario);
    put("at", c.at);
    put("egoists", c.egoists);
    if (!c.groups.empty()) {
        j["groups"] = nlohmann::json::array();
        for (const auto& g : c.groups) j["groups"].push_back(group_json(g));
    }
    put("mu", c.mu);
    put("sigma", c.sigma);
    put("alpha", c.alpha);
    put("total", c.total);
    put("first_group", c.first_group);
    put("group_total", c.group_total);
    j["method"] = c.methods;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    if (!c.landmarks.empty()) j["landmarks"] = c.landmarks;
    if (c.command == "trajectory") {
        j["steps"] = c.steps;
        j["initial"] = c.initial;
    }
    j["format"] = c.format;
    return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
    static const std::vector<std::string> known = {
        "command", "scenario", "at",      "egoists", "groups",    "mu",     "sigma",
        "alpha",   "total",    "first_group", "group_total", "method", "trials", "seed",
        "workers", "landmarks", "steps",  "initial", "format",    "out"};
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    RunConfig c;
    try {
        if (j.contains("command")) c.command = j.at("command").get<std::string>();
        read_optional(j, "scenario", c.scenario);
        read_optional(j, "at", c.at);
        read_optional(j, "egoists", c.egoists);
        if (j.contains("groups")) {
            for (const auto& g : j.at("groups")) {
                if (g.is_object()) {
                    Group group;
                    group.size = g.at("size").get<std::size_t>();
                    if (g.contains("criterion")) {
                        group.criterion = parse_criterion(g.at("criterion").get<std::string>());
                    }
                    c.groups.push_back(group);
                } else if (g.is_string()) {
                    c.groups.push_back(parse_group(g.get<std::string>()));
                } else {
                    c.groups.push_back(Group{g.get<std::size_t>()});
                }
            }
        }
        read_optional(j, "mu", c.mu);
        read_optional(j, "sigma", c.sigma);
        read_optional(j, "alpha", c.alpha);
        read_optional(j, "total", c.total);
        read_optional(j, "first_group", c.first_group);
        read_optional(j, "group_total", c.group_total);
        if (j.contains("method")) {
            const auto& m = j.at("method");
            c.methods = m.is_array() ? m.get<std::vector<std::string>>()
                                     : std::vector<std::string>{m.get<std::string>()};
        }
        if (j.contains("trials")) c.trials = j.at("trials").get<std::uint64_t>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("workers")) c.workers = j.at("workers").get<unsigned>();
        if (j.contains("landmarks")) c.landmarks = j.at("landmarks").get<std::vector<std::string>>();
        if (j.contains("steps")) c.steps = j.at("steps").get<std::size_t>();
        if (j.contains("initial")) c.initial = j.at("initial").get<std::vector<double>>();
        if (j.contains("format")) c.format = j.at("format").get<std::string>();
        if (j.contains("out")) c.out = j.at("out").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

namespace {

struct Resolved {
    Environment env;
    VotingRule rule{0.5};
    std::optional<Scenario> scenario;
    SocietyComposition composition;  // estimate / trajectory
    std::vector<Method> methods;
    McConfig mc;
};

ScenarioOverrides overrides_of(const RunConfig& c) {
    ScenarioOverrides o;
    o.mu = c.mu;
    o.sigma = c.sigma;
    o.alpha = c.alpha;
    o.total = c.total;
    o.first_group = c.first_group;
    o.group_total = c.group_total;
    if (c.scenario == "fig5") o.egoists = c.egoists;
    return o;
}

// Validates the configuration and fills in scenario defaults (recorded back
// into `c` so the echoed config fully determines the run).
Resolved resolve(RunConfig& c) {
    Resolved r;
    try {
        if (c.alpha && !(*c.alpha > 0.0 && *c.alpha < 1.0)) {
            throw ConfigError("alpha: must lie in (0, 1), got " + report::format_real(*c.alpha));
        }
        if (c.sigma && !(*c.sigma > 0.0)) {
            throw ConfigError("sigma: must be positive, got " + report::format_real(*c.sigma));
        }
        if (c.format != "csv" && c.format != "json") {
            throw ConfigError("format: must be csv or json, got '" + c.format + "'");
        }
        if (c.methods.empty()) c.methods = {c.command == "trajectory" ? "mc" : "exact"};
        for (const auto& m : c.methods) {
            const auto parsed = parse_method(m);
            if (!parsed) throw ConfigError("method: unknown method '" + m + "'");
            r.methods.push_back(*parsed);
        }
        if (c.command == "sweep" && r.methods.size() != 1) {
            throw ConfigError("method: sweep takes exactly one method");
        }
        r.mc = McConfig{c.trials, c.seed, c.workers};
        r.mc.validate();

        if (c.scenario) {
            if (!c.groups.empty() || (c.egoists && c.scenario != "fig5")) {
                throw ConfigError("scenario: cannot be combined with --group/--egoists");
            }
            Scenario s = build_scenario(*c.scenario, overrides_of(c));
            c.mu = s.env.mu;
            c.sigma = s.env.sigma;
            c.alpha = s.rule.alpha();
            r.env = s.env;
            r.rule = s.rule;
            if (c.command == "sweep" && r.methods.front() == Method::Approx &&
                s.composition_at(s.sweep_min).groups.size() != 1) {
                throw ConfigError("method: approx applies to single-group scenarios only");
            }
            if (c.command != "sweep") {
                if (!c.at) throw ConfigError("at: a sweep point is required with --scenario");
                if (*c.at < s.sweep_min || *c.at > s.sweep_max) {
                    throw ConfigError("at: " + std::to_string(*c.at) + " outside [" +
                                      std::to_string(s.sweep_min) + ", " +
                                      std::to_string(s.sweep_max) + "]");
                }
                r.composition = s.composition_at(*c.at);
            }
            r.scenario = std::move(s);
        } else {
            if (c.command == "sweep") throw ConfigError("scenario: sweep requires --scenario");
            if (!c.egoists && c.groups.empty()) {
                throw ConfigError("egoists: give --scenario or a custom --egoists/--group society");
            }
            if (c.at) throw ConfigError("at: only valid together with --scenario");
            c.mu = c.mu.value_or(-0.8);
            c.sigma = c.sigma.value_or(30.0);
            c.alpha = c.alpha.value_or(0.5);
            c.egoists = c.egoists.value_or(0);
            r.env = Environment{*c.mu, *c.sigma};
            r.env.validate();
            r.rule = VotingRule(*c.alpha);
            r.composition = SocietyComposition{*c.egoists, c.groups};
            r.composition.validate();
        }
        if (c.command == "trajectory") {
            if (c.initial.empty()) c.initial = {0.0, 0.0, 0.0};
            if (c.initial.size() != 3) {
                throw ConfigError("initial: expected three values (group1, group2, egoist)");
            }
        }
        for (const auto& lm : c.landmarks) {
            if (lm.find(":baseline") == std::string::npos) {
                parse_landmark_spec(lm);
            } else if (!c.scenario) {
                throw ConfigError("landmarks: baseline crossings need --scenario");
            }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return r;
}

std::vector<LandmarkSpec> landmark_specs(const RunConfig& c, const Resolved& r) {
    std::vector<LandmarkSpec> specs;
    for (const auto& text : c.landmarks) {
        if (const auto pos = text.find(":baseline"); pos != std::string::npos) {
            // Crossing of a role's curve with the group-free level of the same society.
            const std::size_t n = r.scenario->composition_at(r.scenario->sweep_min).total();
            LandmarkSpec spec = parse_landmark_spec(text.substr(0, pos) + ":zero" +
                                                    text.substr(pos + 9));
            spec.level = group_free_baseline(n, r.env, r.rule);
            spec.label = text;
            specs.push_back(spec);
        } else {
            specs.push_back(parse_landmark_spec(text));
        }
    }
    return specs;
}

nlohmann::json metadata_of(const RunConfig& c) {
    nlohmann::json meta;
    meta["config"] = to_json(c);
    meta["seed"] = c.seed;
    return meta;
}

void emit(const RunConfig& c, const std::string& content, std::ostream& out) {
    if (c.out.empty() || c.out == "-") {
        out << content;
    } else {
        report::write_file_atomic(c.out, content);
    }
}

void cmd_sweep(RunConfig& c, std::ostream& out, std::ostream& err) {
    const Resolved r = resolve(c);
    const auto specs = landmark_specs(c, r);
    const auto results = run_sweep(*r.scenario, r.methods.front(), r.mc);
    const auto landmarks = detect_landmarks(results, specs);
    const auto rows = report::rows_from_sweep(results);
    const auto meta = metadata_of(c);
    emit(c, c.format == "json" ? report::increments_json(meta, rows, landmarks)
                               : report::increments_csv(meta, rows, landmarks),
         out);
    auto& log = (c.out.empty() || c.out == "-") ? err : out;
    for (const auto& lm : landmarks) {
        log << "landmark " << lm.label << ": " << landmark_kind_name(lm.kind) << " at x=" << lm.x
            << " value=" << report::format_real(lm.value) << '\n';
    }
}

void cmd_estimate(RunConfig& c, std::ostream& out) {
    const Resolved r = resolve(c);
    std::vector<report::Row> rows;
    for (const Method m : r.methods) {
        rows.push_back({c.at, evaluate(r.composition, r.env, r.rule, m, r.mc),
                        std::string(method_name(m))});
    }
    const auto meta = metadata_of(c);
    emit(c, c.format == "json" ? report::increments_json(meta, rows, {})
                               : report::increments_csv(meta, rows, {}),
         out);
}

void cmd_trajectory(RunConfig& c, std::ostream& out) {
    const Resolved r = resolve(c);
    const InitialCapital initial{c.initial[0], c.initial[1], c.initial[2]};
    const auto records = simulate_trajectory(r.composition, r.env, r.rule, c.steps, initial, r.mc);
    const auto meta = metadata_of(c);
    emit(c, c.format == "json" ? report::trajectory_json(meta, records)
                               : report::trajectory_csv(meta, records),
         out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Egoists and cohesive groups under alpha-majority voting", "votesim"};
    app.require_subcommand(1);

    struct Flags {
        std::string config_path;
        std::string scenario;
        std::size_t at = 0;
        std::size_t egoists = 0;
        std::vector<std::string> groups;
        double mu = 0, sigma = 0, alpha = 0;
        std::size_t total = 0, first_group = 0, group_total = 0;
        std::vector<std::string> methods;
        std::uint64_t trials = 0, seed = 0;
        unsigned workers = 0;
        std::vector<std::string> landmarks;
        std::size_t steps = 0;
        std::vector<double> initial;
        std::string format;
        std::string out;
    } f;

    std::vector<CLI::App*> subs;
    const auto add_shared = [&](CLI::App* sub) {
        sub->add_option("--config", f.config_path, "JSON config file; flags override it");
        sub->add_option("--scenario", f.scenario, "fig1 .. fig5");
        sub->add_option("--at", f.at, "Sweep point for estimate/trajectory");
        sub->add_option("--egoists", f.egoists, "Number of egoists");
        sub->add_option("--group", f.groups, "SIZE[:total|majority=A|average=T], repeatable");
        sub->add_option("--mu", f.mu, "Mean increment");
        sub->add_option("--sigma", f.sigma, "Increment standard deviation");
        sub->add_option("--alpha", f.alpha, "Voting threshold in (0, 1)");
        sub->add_option("--total", f.total, "Scenario society size");
        sub->add_option("--first-group", f.first_group, "fig2 first group / fig3-4 lead");
        sub->add_option("--group-total", f.group_total, "fig5 combined group size");
        sub->add_option("--method", f.methods, "approx, exact or mc")->delimiter(',');
        sub->add_option("--trials", f.trials, "Monte Carlo trials");
        sub->add_option("--seed", f.seed, "Monte Carlo seed");
        sub->add_option("--workers", f.workers, "Monte Carlo threads");
        sub->add_option("--landmarks", f.landmarks, "e.g. group:argmax,random:zero")->delimiter(',');
        sub->add_option("--steps", f.steps, "Trajectory length");
        sub->add_option("--initial", f.initial, "Initial capital: group1,group2,egoist")->delimiter(',');
        sub->add_option("--format", f.format, "csv or json");
        sub->add_option("--out", f.out, "Output file (default stdout)");
        subs.push_back(sub);
    };
    add_shared(app.add_subcommand("sweep", "Evaluate a scenario at every sweep point"));
    add_shared(app.add_subcommand("estimate", "Expected increments for one society"));
    add_shared(app.add_subcommand("trajectory", "Simulate cumulative role capital"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        CLI::App* sub = nullptr;
        for (CLI::App* s : subs) {
            if (s->parsed()) sub = s;
        }
        const auto given = [&](const char* name) { return sub->get_option(name)->count() > 0; };

        RunConfig c;
        if (given("--config")) {
            std::ifstream in(f.config_path);
            if (!in) throw ConfigError("config: cannot read '" + f.config_path + "'");
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError("config: " + std::string(e.what()));
            }
            c = config_from_json(j);
        }
        c.command = sub->get_name();
        if (given("--scenario")) c.scenario = f.scenario;
        if (given("--at")) c.at = f.at;
        if (given("--egoists")) c.egoists = f.egoists;
        if (given("--group")) {
            c.groups.clear();
            for (const auto& g : f.groups) c.groups.push_back(parse_group(g));
        }
        if (given("--mu")) c.mu = f.mu;
        if (given("--sigma")) c.sigma = f.sigma;
        if (given("--alpha")) c.alpha = f.alpha;
        if (given("--total")) c.total = f.total;
        if (given("--first-group")) c.first_group = f.first_group;
        if (given("--group-total")) c.group_total = f.group_total;
        if (given("--method")) c.methods = f.methods;
        if (given("--trials")) c.trials = f.trials;
        if (given("--seed")) c.seed = f.seed;
        if (given("--workers")) c.workers = f.workers;
        if (given("--landmarks")) c.landmarks = f.landmarks;
        if (given("--steps")) c.steps = f.steps;
        if (given("--initial")) c.initial = f.initial;
        if (given("--format")) c.format = f.format;
        if (given("--out")) c.out = f.out;

        if (c.command == "sweep") {
            cmd_sweep(c, out, err);
        } else if (c.command == "estimate") {
            cmd_estimate(c, out);
        } else {
            cmd_trajectory(c, out);
        }
    } catch (const ConfigError& e) {
        err << "error: invalid " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace votesim::cli
