#include "chebyquad/config.hpp"

#include <cstdlib>
#include <fstream>

#include "chebyquad/error.hpp"
#include "json.hpp"

#ifndef CHEBYQUAD_DEFAULT_CONFIG
#define CHEBYQUAD_DEFAULT_CONFIG ""
#endif

namespace chebyquad {

Constants default_constants() {
  Constants c;
  // same values as config/constants.json (tools/fit_constants)
  c.sphere[1] = {8.25, 0.761};
  c.sphere[2] = {52.7, 0.139};
  c.sphere[3] = {332.0, 0.00749};
  c.cylinder[3] = {2.0, 35.4};
  c.cylinder[4] = {8.0, 70.6};
  c.source = "builtin";
  return c;
}

Constants load_constants(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open constants file " + path.string());
  Constants c;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    for (const auto& [key, v] : j.at("sphere").items())
      c.sphere[std::stoi(key)] = {v.at("C").get<double>(), v.at("c").get<double>()};
    for (const auto& [key, v] : j.at("cylinder").items())
      c.cylinder[std::stoi(key)] = {v.at("min_L").get<double>(), v.at("C").get<double>()};
  } catch (const std::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  c.source = path.string();
  return c;
}

const Constants& constants() {
  static const Constants loaded = [] {
    if (const char* env = std::getenv("CHEBYQUAD_CONFIG"); env && *env) return load_constants(env);
    const std::filesystem::path fallback = CHEBYQUAD_DEFAULT_CONFIG;
    if (!fallback.empty() && std::filesystem::exists(fallback)) return load_constants(fallback);
    return default_constants();
  }();
  return loaded;
}

SphereConstants sphere_constants(int d) {
  const auto& table = constants().sphere;
  auto it = table.find(d);
  if (it == table.end()) throw ParameterError("no frozen sphere constants for d = " + std::to_string(d));
  return it->second;
}

CylinderConstants cylinder_constants(int d) {
  const auto& table = constants().cylinder;
  auto it = table.find(d);
  if (it == table.end()) throw ParameterError("no frozen cylinder constants for d = " + std::to_string(d));
  return it->second;
}

}  // namespace chebyquad
