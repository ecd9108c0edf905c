#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "votesim/model.hpp"
#include "votesim/monte_carlo.hpp"
#include "votesim/scenarios.hpp"

namespace votesim::cli {

/// Everything that determines a run. Serialized (minus the output path) into
/// the metadata header of every output file; feeding that JSON back through
/// --config reproduces the output byte for byte.
struct RunConfig {
    std::string command;
    std::optional<std::string> scenario;
    std::optional<std::size_t> at;
    std::optional<std::size_t> egoists;
    std::vector<Group> groups;
    std::optional<double> mu;
    std::optional<double> sigma;
    std::optional<double> alpha;
    std::optional<std::size_t> total;
    std::optional<std::size_t> first_group;
    std::optional<std::size_t> group_total;
    std::vector<std::string> methods;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::vector<std::string> landmarks;
    std::size_t steps = 0;
    std::vector<double> initial;
    std::string format = "csv";
    std::string out;
};

nlohmann::json to_json(const RunConfig& config);
/// Reads the keys written by to_json; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);

/// Parses "50", "50:total", "50:majority=0.6" or "50:average=0.1".
Group parse_group(const std::string& text);

/// Entry point shared by the executable and the tests. Returns 0 iff the
/// output artifact was written.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace votesim::cli
