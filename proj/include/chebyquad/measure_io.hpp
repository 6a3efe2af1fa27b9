#pragma once

#include <filesystem>
#include <string>

#include "chebyquad/measure.hpp"
#include "json.hpp"

namespace chebyquad {

/// Build a measure from a JSON spec. Either {"builtin": name, "params": {...}}
/// or explicit {"support", "atoms", "pieces"}; polynomial "coeffs" are in the
/// global variable x. Builtins: uniform, two_interval_sigma0,
/// truncated_exponential_sigma_k, sine_power_weight, linear_density, mixture.
[[nodiscard]] Measure1D parse_measure(const nlohmann::json& spec);
[[nodiscard]] Measure1D parse_measure_file(const std::filesystem::path& path);

/// Explicit-form JSON; parse_measure(measure_to_json(m)) reproduces m up to rounding.
[[nodiscard]] nlohmann::json measure_to_json(const Measure1D& m);

}  // namespace chebyquad
