#include "votesim/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <unistd.h>

namespace votesim::report {

namespace {

constexpr Role kRoles[] = {Role::Group1, Role::Group2, Role::Egoist, Role::Random};

std::string optional_real(const std::optional<double>& v) {
    return v ? format_real(*v) : std::string();
}

void write_metadata(std::ostringstream& os, const nlohmann::json& metadata) {
    os << "# " << kToolName << ' ' << kToolVersion << '\n';
    for (const auto& [key, value] : metadata.items()) {
        os << "# " << key << ": " << value.dump() << '\n';
    }
}

nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json landmark_json(const Landmark& lm) {
    nlohmann::json j{{"kind", landmark_kind_name(lm.kind)},
                     {"role", role_name(lm.role)},
                     {"x", lm.x},
                     {"value", lm.value},
                     {"spec", lm.label}};
    if (lm.other) j["other"] = role_name(*lm.other);
    return j;
}

}  // namespace

std::string format_real(double value) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    if (ec != std::errc()) {
        throw std::runtime_error("format_real: conversion failed");
    }
    return std::string(buf, ptr);
}

std::vector<Row> rows_from_sweep(const std::vector<SweepResult>& results) {
    std::vector<Row> rows;
    rows.reserve(results.size());
    for (const auto& r : results) {
        rows.push_back({r.x, r.increments, std::string(method_name(r.method))});
    }
    return rows;
}

std::string increments_csv(const nlohmann::json& metadata, const std::vector<Row>& rows,
                           const std::vector<Landmark>& landmarks) {
    std::ostringstream os;
    write_metadata(os, metadata);
    os << "x,group1,group1_se,group2,group2_se,egoist,egoist_se,random,random_se,accept_rate,method\n";
    for (const auto& row : rows) {
        if (row.x) os << *row.x;
        const auto& inc = row.increments;
        for (const Role role : kRoles) {
            os << ',' << optional_real(inc.mean.get(role)) << ',';
            if (inc.std_error && inc.mean.get(role)) {
                os << optional_real(inc.std_error->get(role));
            }
        }
        os << ',' << optional_real(inc.acceptance_rate) << ',' << row.method << '\n';
    }
    for (const auto& lm : landmarks) {
        os << "# landmark: " << landmark_json(lm).dump() << '\n';
    }
    return os.str();
}

std::string increments_json(const nlohmann::json& metadata, const std::vector<Row>& rows,
                            const std::vector<Landmark>& landmarks) {
    nlohmann::json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["metadata"] = metadata;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json j;
        j["x"] = row.x ? nlohmann::json(*row.x) : nlohmann::json(nullptr);
        for (const Role role : kRoles) {
            const std::string name(role_name(role));
            const auto v = row.increments.mean.get(role);
            j[name] = optional_json(v);
            j[name + "_se"] = (row.increments.std_error && v)
                                  ? optional_json(row.increments.std_error->get(role))
                                  : nlohmann::json(nullptr);
        }
        j["accept_rate"] = optional_json(row.increments.acceptance_rate);
        j["method"] = row.method;
        doc["rows"].push_back(std::move(j));
    }
    doc["landmarks"] = nlohmann::json::array();
    for (const auto& lm : landmarks) {
        doc["landmarks"].push_back(landmark_json(lm));
    }
    return doc.dump(2) + "\n";
}

std::string trajectory_csv(const nlohmann::json& metadata,
                           const std::vector<TrajectoryRecord>& records) {
    std::ostringstream os;
    write_metadata(os, metadata);
    os << "step,group1,group2,egoist,random,accepted\n";
    for (const auto& rec : records) {
        os << rec.step_index;
        for (const Role role : kRoles) {
            os << ',' << optional_real(rec.per_role_cumulative_capital.get(role));
        }
        os << ',' << (rec.accepted ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string trajectory_json(const nlohmann::json& metadata,
                            const std::vector<TrajectoryRecord>& records) {
    nlohmann::json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["metadata"] = metadata;
    doc["steps"] = nlohmann::json::array();
    for (const auto& rec : records) {
        nlohmann::json j{{"step", rec.step_index}, {"accepted", rec.accepted}};
        for (const Role role : kRoles) {
            j[std::string(role_name(role))] = optional_json(rec.per_role_cumulative_capital.get(role));
        }
        doc["steps"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("out: cannot open '" + tmp.string() + "' for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw std::runtime_error("out: write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("out: cannot move output into place at '" + path.string() + "'");
    }
}

}  // namespace votesim::report
