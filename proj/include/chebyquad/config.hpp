#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace chebyquad {

/// diam(E_i) <= C tau, mass(E_i) >= c tau^d, K <= C tau^{-d}.
struct SphereConstants {
  double C = 0.0;
  double c = 0.0;
};

/// L must exceed min_L; diam(D) <= C tau and K <= C L W^{d-2} tau^{-(d-1)}.
struct CylinderConstants {
  double min_L = 0.0;
  double C = 0.0;
};

/// Empirically fitted constants, frozen in a JSON file.
struct Constants {
  std::map<int, SphereConstants> sphere;
  std::map<int, CylinderConstants> cylinder;
  std::string source;  // file path, or "builtin"
};

[[nodiscard]] Constants default_constants();
/// Throws ValidationError on a malformed file.
[[nodiscard]] Constants load_constants(const std::filesystem::path& path);

/// Loaded once from $CHEBYQUAD_CONFIG, else the installed default file, else
/// the compiled defaults.
[[nodiscard]] const Constants& constants();

/// Throws ParameterError when no constant is recorded for d.
[[nodiscard]] SphereConstants sphere_constants(int d);
[[nodiscard]] CylinderConstants cylinder_constants(int d);

}  // namespace chebyquad
