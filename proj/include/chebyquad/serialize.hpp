#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "chebyquad/bounds.hpp"
#include "chebyquad/cubature_cylinder.hpp"
#include "chebyquad/cubature_sphere.hpp"
#include "chebyquad/quadrature.hpp"
#include "chebyquad/random_cubature.hpp"
#include "chebyquad/verify.hpp"
#include "json.hpp"

namespace chebyquad {

inline constexpr int kFormatVersion = 1;

/// Doubles are written in shortest round-trip form.
[[nodiscard]] nlohmann::json to_json(const QuadratureResult& r);
[[nodiscard]] nlohmann::json to_json(const ResidualReport& r);
[[nodiscard]] nlohmann::json to_json(const UpperBoundReport& r);
[[nodiscard]] nlohmann::json to_json(const LowerBoundReport& r);
[[nodiscard]] nlohmann::json to_json(const SmallBallEstimate& s);
[[nodiscard]] nlohmann::json to_json(const DensityProbe& p);
[[nodiscard]] nlohmann::json to_json(const CubatureCheck& c);
[[nodiscard]] nlohmann::json to_json(const CoverageCheck& c);

/// Bundle with per-box angle intervals, mass, diameter bound and factor
/// nodes; with_points adds the product points.
[[nodiscard]] nlohmann::json to_json(const SphereCubature& c, bool with_points);
/// Bundle with per-cell axis interval, sphere box and axis nodes, plus the
/// sphere factor bundle; with_points adds each cell's points (scaled by W).
[[nodiscard]] nlohmann::json to_json(const CylinderCubature& c, bool with_points);

/// Adds format_version and writes with a trailing newline.
void write_json(const std::filesystem::path& path, nlohmann::json j);
[[nodiscard]] nlohmann::json read_json(const std::filesystem::path& path);
/// Appends one compact record per line.
void append_record(const std::filesystem::path& path, nlohmann::json record);

/// One decimal per line, %.17g.
void write_nodes(const std::filesystem::path& path, std::span<const double> nodes);
/// Throws ValidationError on unreadable lines.
[[nodiscard]] std::vector<double> read_nodes(const std::filesystem::path& path);

/// FNV-1a of a file's bytes, hex.
[[nodiscard]] std::string hash_file(const std::filesystem::path& path);

}  // namespace chebyquad
