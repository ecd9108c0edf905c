#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "votesim/analytic.hpp"
#include "votesim/monte_carlo.hpp"
#include "votesim/report.hpp"
#include "votesim/scenarios.hpp"
#include "votesim/stats.hpp"

namespace py = pybind11;
using namespace votesim;

namespace {

SocietyComposition composition(std::size_t egoists, const std::vector<std::size_t>& groups) {
    SocietyComposition comp{egoists, {}};
    for (const auto g : groups) comp.groups.push_back(Group{g});
    return comp;
}

py::dict to_dict(const ExpectedIncrements& inc) {
    py::dict d;
    for (const Role role : {Role::Group1, Role::Group2, Role::Egoist, Role::Random}) {
        const std::string name(role_name(role));
        const auto v = inc.mean.get(role);
        d[name.c_str()] = v ? py::cast(*v) : py::none();
        if (inc.std_error) {
            d[(name + "_se").c_str()] =
                v ? py::cast(*inc.std_error->get(role)) : py::none();
        }
    }
    d["accept_rate"] = inc.acceptance_rate ? py::cast(*inc.acceptance_rate) : py::none();
    return d;
}

ScenarioOverrides overrides(std::optional<double> mu, std::optional<double> sigma,
                            std::optional<double> alpha) {
    ScenarioOverrides o;
    o.mu = mu;
    o.sigma = sigma;
    o.alpha = alpha;
    return o;
}

Method method_of(const std::string& name) {
    if (auto m = parse_method(name)) return *m;
    throw py::value_error("unknown method '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Expected capital increments of egoists and groups under alpha-majority voting";

    m.def("normal_cdf", &stats::normal_cdf, py::arg("x"));
    m.def("normal_pdf", &stats::normal_pdf, py::arg("x"));
    m.def("positive_part_mean", &stats::positive_part_mean, py::arg("mu"), py::arg("sigma"));
    m.def("binomial_tail", &stats::binomial_tail, py::arg("trials"), py::arg("success_prob"),
          py::arg("k"));
    m.def("min_votes", [](double alpha, std::size_t n) { return VotingRule(alpha).min_votes(n); },
          py::arg("alpha"), py::arg("n"));

    m.def(
        "exact",
        [](std::size_t egoists, const std::vector<std::size_t>& groups, double mu, double sigma,
           double alpha) {
            return to_dict(exact_increments(composition(egoists, groups), Environment{mu, sigma},
                                            VotingRule(alpha)));
        },
        py::arg("egoists"), py::arg("groups"), py::arg("mu"), py::arg("sigma"), py::arg("alpha"),
        "Exact expected one-step increments for up to two total-positive groups.");

    m.def(
        "approx",
        [](std::size_t egoists, std::size_t group, double mu, double sigma, double alpha) {
            return to_dict(approx_single_group(composition(egoists, {group}),
                                               Environment{mu, sigma}, VotingRule(alpha)));
        },
        py::arg("egoists"), py::arg("group"), py::arg("mu"), py::arg("sigma"), py::arg("alpha"),
        "Normal approximation for a single group.");

    m.def(
        "group_free_baseline",
        [](std::size_t n, double mu, double sigma, double alpha) {
            return group_free_baseline(n, Environment{mu, sigma}, VotingRule(alpha));
        },
        py::arg("n"), py::arg("mu"), py::arg("sigma"), py::arg("alpha"));

    m.def(
        "estimate",
        [](std::size_t egoists, const std::vector<std::size_t>& groups, double mu, double sigma,
           double alpha, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
            const McConfig mc{trials, seed, workers};
            ExpectedIncrements inc;
            {
                py::gil_scoped_release release;
                inc = estimate_increments(composition(egoists, groups), Environment{mu, sigma},
                                          VotingRule(alpha), mc);
            }
            return to_dict(inc);
        },
        py::arg("egoists"), py::arg("groups"), py::arg("mu"), py::arg("sigma"), py::arg("alpha"),
        py::arg("trials") = 100000, py::arg("seed") = 1, py::arg("workers") = 1,
        "Monte Carlo estimate with standard errors.");

    m.def(
        "sweep",
        [](const std::string& scenario, const std::string& method, std::optional<double> mu,
           std::optional<double> sigma, std::optional<double> alpha, std::uint64_t trials,
           std::uint64_t seed, unsigned workers) {
            const Scenario s = build_scenario(scenario, overrides(mu, sigma, alpha));
            const auto rows = run_sweep(s, method_of(method), McConfig{trials, seed, workers});
            py::list out;
            for (const auto& row : rows) {
                py::dict d = to_dict(row.increments);
                d["x"] = row.x;
                d["method"] = std::string(method_name(row.method));
                out.append(d);
            }
            return out;
        },
        py::arg("scenario"), py::arg("method") = "exact", py::arg("mu") = py::none(),
        py::arg("sigma") = py::none(), py::arg("alpha") = py::none(), py::arg("trials") = 100000,
        py::arg("seed") = 1, py::arg("workers") = 1);

    m.def(
        "landmarks",
        [](const std::string& scenario, const std::vector<std::string>& specs,
           const std::string& method) {
            const Scenario s = build_scenario(scenario);
            const auto rows = run_sweep(s, method_of(method));
            std::vector<LandmarkSpec> parsed;
            for (const auto& text : specs) parsed.push_back(parse_landmark_spec(text));
            py::list out;
            for (const auto& lm : detect_landmarks(rows, parsed)) {
                py::dict d;
                d["spec"] = lm.label;
                d["kind"] = std::string(landmark_kind_name(lm.kind));
                d["x"] = lm.x;
                d["value"] = lm.value;
                out.append(d);
            }
            return out;
        },
        py::arg("scenario"), py::arg("specs"), py::arg("method") = "exact");

    m.attr("__version__") = report::kToolVersion;
}
