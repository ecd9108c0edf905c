#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "votesim/monte_carlo.hpp"
#include "votesim/scenarios.hpp"

namespace votesim::report {

inline constexpr const char* kToolName = "votesim";
inline constexpr const char* kToolVersion = "0.1.0";

/// 17 significant digits; lossless for doubles.
std::string format_real(double value);

/// One table row. `x` is empty for custom compositions.
struct Row {
    std::optional<std::size_t> x;
    ExpectedIncrements increments;
    std::string method;
};

std::vector<Row> rows_from_sweep(const std::vector<SweepResult>& results);

/// Column order: x, group1, group1_se, group2, group2_se, egoist, egoist_se,
/// random, random_se, accept_rate, method. Absent values are empty fields.
std::string increments_csv(const nlohmann::json& metadata, const std::vector<Row>& rows,
                           const std::vector<Landmark>& landmarks);
std::string increments_json(const nlohmann::json& metadata, const std::vector<Row>& rows,
                            const std::vector<Landmark>& landmarks);

/// Columns: step, group1, group2, egoist, random, accepted.
std::string trajectory_csv(const nlohmann::json& metadata,
                           const std::vector<TrajectoryRecord>& records);
std::string trajectory_json(const nlohmann::json& metadata,
                            const std::vector<TrajectoryRecord>& records);

/// Writes via a sibling temporary file and rename, so readers never see a
/// partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace votesim::report
