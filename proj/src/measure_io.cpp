#include "chebyquad/measure_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "chebyquad/error.hpp"

namespace chebyquad {

using nlohmann::json;

namespace {

// Re-expand sum c_i (s + shift)^i as a polynomial in s.
std::array<double, 4> shift_poly(const std::array<double, 4>& c, double shift) {
  std::array<double, 4> out{};
  const int binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  for (int i = 0; i < 4; ++i)
    for (int l = 0; l <= i; ++l) out[l] += c[i] * binom[i][l] * std::pow(shift, i - l);
  return out;
}

Interval read_interval(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(std::string("measure spec: ") + what + " must be [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

double param(const json& params, const char* key, double fallback) {
  if (!params.is_object() || !params.contains(key)) return fallback;
  if (!params[key].is_number())
    throw ValidationError(std::string("measure spec: params.") + key + " must be a number");
  return params[key].get<double>();
}

int int_param(const json& params, const char* key) {
  if (!params.is_object() || !params.contains(key) || !params[key].is_number_integer())
    throw ValidationError(std::string("measure spec: params.") + key + " must be an integer");
  return params[key].get<int>();
}

DensityPiece read_piece(const json& j) {
  if (!j.is_object()) throw ValidationError("measure spec: each piece must be an object");
  const Interval iv = read_interval(j.value("interval", json()), "piece interval");
  const std::string kind = j.value("kind", std::string("polynomial"));
  if (kind == "polynomial") {
    const json& c = j.value("coeffs", json());
    if (!c.is_array() || c.empty() || c.size() > 4)
      throw ValidationError("measure spec: coeffs must list 1 to 4 numbers (degree <= 3)");
    std::array<double, 4> global{};
    for (std::size_t i = 0; i < c.size(); ++i) global[i] = c[i].get<double>();
    return PolynomialPiece{iv, shift_poly(global, iv.lo)};
  }
  if (kind == "exponential")
    return ExponentialPiece{iv, j.at("scale").get<double>(), j.at("rate").get<double>()};
  if (kind == "sine_power")
    return SinePowerPiece{iv, j.at("scale").get<double>(), j.at("power").get<int>(),
                          j.at("freq").get<double>(), j.at("phase").get<double>()};
  throw ValidationError("measure spec: unknown piece kind '" + kind + "'");
}

// Weighted sum of measures. Atoms at equal positions merge; polynomial pieces
// are summed over the common refinement of their intervals. Other piece kinds
// must not overlap.
Measure1D mixture(const json& params) {
  const json& comps = params.is_object() ? params.value("components", json()) : json();
  if (!comps.is_array() || comps.empty())
    throw ValidationError("measure spec: mixture needs params.components");
  std::map<double, double> atoms;
  std::vector<std::pair<DensityPiece, double>> pieces;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const json& c : comps) {
    if (!c.is_object() || !c.contains("weight") || !c.contains("measure"))
      throw ValidationError("measure spec: mixture component needs weight and measure");
    const double w = c["weight"].get<double>();
    if (!(w > 0.0)) throw ValidationError("measure spec: mixture weights must be > 0");
    const Measure1D m = parse_measure(c["measure"]);
    lo = std::min(lo, m.support().lo);
    hi = std::max(hi, m.support().hi);
    for (const Atom& a : m.atoms()) atoms[a.x] += w * a.mass;
    for (const DensityPiece& p : scale_pieces(m.pieces(), w)) pieces.emplace_back(p, 0.0);
  }

  std::vector<double> cuts;
  for (const auto& [p, unused] : pieces) {
    cuts.push_back(piece_interval(p).lo);
    cuts.push_back(piece_interval(p).hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<DensityPiece> merged;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s];
    const double b = cuts[s + 1];
    std::array<double, 4> sum{};
    int poly_count = 0;
    const DensityPiece* other = nullptr;
    int other_count = 0;
    for (const auto& [p, unused] : pieces) {
      const Interval& iv = piece_interval(p);
      if (!(iv.lo <= a && iv.hi >= b)) continue;
      if (const auto* poly = std::get_if<PolynomialPiece>(&p)) {
        const auto local = shift_poly(poly->coeffs, a - iv.lo);
        for (int i = 0; i < 4; ++i) sum[i] += local[i];
        ++poly_count;
      } else {
        other = &p;
        ++other_count;
      }
    }
    if (other_count > 0 && (other_count + poly_count) > 1)
      throw ValidationError("measure spec: mixture overlaps a non-polynomial piece");
    if (other_count == 1) {
      const Interval& iv = piece_interval(*other);
      if (iv.lo != a || iv.hi != b)
        throw ValidationError("measure spec: mixture overlaps a non-polynomial piece");
      merged.push_back(*other);
    } else if (poly_count > 0) {
      merged.push_back(PolynomialPiece{{a, b}, sum});
    }
  }
  std::vector<Atom> atom_list;
  for (const auto& [x, mass] : atoms) atom_list.push_back({x, mass});
  return Measure1D({lo, hi}, std::move(atom_list), std::move(merged));
}

Measure1D builtin_measure(const std::string& name, const json& params) {
  if (name == "uniform") return builtin::uniform(param(params, "lo", 0.0), param(params, "hi", 1.0));
  if (name == "two_interval_sigma0") return builtin::two_interval_sigma0();
  if (name == "truncated_exponential_sigma_k")
    return builtin::truncated_exponential_sigma_k(int_param(params, "k"));
  if (name == "sine_power_weight")
    return builtin::sine_power_weight(int_param(params, "power"), param(params, "lo", 0.0),
                                      param(params, "hi", 1.0));
  if (name == "linear_density")
    return builtin::linear_density(param(params, "value_at_0", 1.0), param(params, "value_at_1", 1.0));
  if (name == "mixture") return mixture(params);
  throw ValidationError("measure spec: unknown builtin '" + name + "'");
}

}  // namespace

Measure1D parse_measure(const json& spec) {
  if (!spec.is_object()) throw ValidationError("measure spec: top level must be an object");
  const bool has_builtin = spec.contains("builtin");
  const bool has_explicit = spec.contains("support") || spec.contains("atoms") || spec.contains("pieces");
  if (has_builtin == has_explicit)
    throw ValidationError("measure spec: give exactly one of 'builtin' or explicit support/atoms/pieces");
  try {
    if (has_builtin) {
      if (!spec["builtin"].is_string()) throw ValidationError("measure spec: builtin must be a string");
      return builtin_measure(spec["builtin"].get<std::string>(), spec.value("params", json::object()));
    }
    if (!spec.contains("support")) throw ValidationError("measure spec: explicit form needs 'support'");
    const Interval support = read_interval(spec["support"], "support");
    std::vector<Atom> atoms;
    for (const json& a : spec.value("atoms", json::array())) {
      if (!a.is_object() || !a.contains("x") || !a.contains("mass"))
        throw ValidationError("measure spec: each atom needs x and mass");
      atoms.push_back({a["x"].get<double>(), a["mass"].get<double>()});
    }
    std::vector<DensityPiece> pieces;
    for (const json& p : spec.value("pieces", json::array())) pieces.push_back(read_piece(p));
    return Measure1D(support, std::move(atoms), std::move(pieces));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("measure spec: ") + e.what());
  }
}

Measure1D parse_measure_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open measure file " + path.string());
  json spec;
  try {
    spec = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  try {
    return parse_measure(spec);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

json measure_to_json(const Measure1D& m) {
  json out;
  out["support"] = {m.support().lo, m.support().hi};
  out["atoms"] = json::array();
  for (const Atom& a : m.atoms()) out["atoms"].push_back({{"x", a.x}, {"mass", a.mass}});
  out["pieces"] = json::array();
  for (const DensityPiece& piece : m.pieces()) {
    const Interval& iv = piece_interval(piece);
    json j;
    j["interval"] = {iv.lo, iv.hi};
    if (const auto* p = std::get_if<PolynomialPiece>(&piece)) {
      const auto global = shift_poly(p->coeffs, -iv.lo);
      j["coeffs"] = {global[0], global[1], global[2], global[3]};
    } else if (const auto* e = std::get_if<ExponentialPiece>(&piece)) {
      j["kind"] = "exponential";
      j["scale"] = e->scale;
      j["rate"] = e->rate;
    } else {
      const auto& s = std::get<SinePowerPiece>(piece);
      j["kind"] = "sine_power";
      j["scale"] = s.scale;
      j["power"] = s.power;
      j["freq"] = s.freq;
      j["phase"] = s.phase;
    }
    out["pieces"].push_back(j);
  }
  return out;
}

}  // namespace chebyquad
