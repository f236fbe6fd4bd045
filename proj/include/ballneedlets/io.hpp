#pragma once

// JSON and CSV artifacts. Every JSON document carries schema_version,
// command_line and seed.

#include <cstdint>
#include <string>

#include "json.hpp"

#include "ballneedlets/cubature.hpp"
#include "ballneedlets/geometry.hpp"
#include "ballneedlets/needlets.hpp"

namespace ballneedlets {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

struct RunInfo {
  std::string command_line;
  std::uint64_t seed = 0;
};

Json envelope(const RunInfo& info, const std::string& kind);

Json to_json(const PointSet& ps);
Json to_json(const CubatureRule& rule);
Json to_json(const NeedletFrame& frame);

/// Two-space indented, keys sorted, doubles printed with 17 significant digits.
std::string dump(const Json& j);

/// %.17g.
std::string format_double(double v);

Json matrix_columns(const Eigen::MatrixXd& m);
Json vector_values(const Eigen::VectorXd& v);

}  // namespace ballneedlets
