#include "chebyquad/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "chebyquad/error.hpp"

namespace chebyquad {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json interval_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

json matrix_rows(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json wilson_json(const WilsonInterval& w) { return json::array({w.lo, w.hi}); }

}  // namespace

json to_json(const QuadratureResult& r) {
  const auto& d = r.diagnostics;
  json diag = {{"rho", d.rho},
               {"r", d.r},
               {"subsets_available", d.subsets_available},
               {"subsets_used", d.subsets_used},
               {"subsets_skipped", d.subsets_skipped},
               {"flow_steps", d.flow_steps},
               {"newton_fallbacks", d.newton_fallbacks},
               {"passes", d.passes},
               {"global_polish", d.global_polish}};
  if (r.large_atoms) {
    diag["truncated_mass"] = d.truncated_mass;
    diag["q"] = d.q;
    diag["atom_nodes"] = d.atom_nodes;
  }
  return {{"kind", "quadrature"},
          {"k", r.k},
          {"n", r.nodes.size()},
          {"mode", to_string(r.mode)},
          {"large_atoms", r.large_atoms},
          {"success", r.success},
          {"note", r.note},
          {"target_moments", std::vector<double>(r.target.data(), r.target.data() + r.target.size())},
          {"residual", r.residual},
          {"diagnostics", diag},
          {"nodes", r.nodes}};
}

json to_json(const ResidualReport& r) {
  return {{"kind", "residual_report"}, {"k", r.k},           {"n", r.n},
          {"per_degree", r.per_degree}, {"max", r.max},       {"nodes_hash", r.nodes_hash},
          {"measure_hash", r.measure_hash}};
}

json to_json(const UpperBoundReport& r) {
  return {{"k", r.k},
          {"rho", r.rho},
          {"r", r.r},
          {"n_guaranteed", r.n_guaranteed},
          {"density_sup", optional_number(r.density_sup)},
          {"density_bound", optional_number(r.density_bound)},
          {"beta_bound", optional_number(r.beta_bound)},
          {"large_atom_referral", r.large_atom_referral},
          {"note", r.note}};
}

json to_json(const LowerBoundReport& r) {
  return {{"k", r.k},
          {"moment_bound", optional_number(r.moment_bound)},
          {"bernstein_bound", optional_number(r.bernstein_bound)},
          {"gauss_order", r.m ? json(*r.m) : json(nullptr)},
          {"note", r.note}};
}

json to_json(const SmallBallEstimate& s) {
  return {{"kind", "small_ball"},       {"n", s.n},
          {"k", s.k},                   {"d", s.d},
          {"eps", s.eps},               {"repetitions", s.repetitions},
          {"hit_count", s.hit_count},   {"estimate", s.estimate},
          {"wilson95", wilson_json(s.ci)}, {"nearest_miss", s.nearest_miss},
          {"seed", s.seed},             {"rng", Philox4x32::algorithm}};
}

json to_json(const DensityProbe& p) {
  return {{"kind", "density_probe"},  {"n", p.n},
          {"k", p.k},                 {"d", p.d},
          {"dimension", p.dimension}, {"bin_radius", p.bin_radius},
          {"repetitions", p.repetitions}, {"hits", p.hits},
          {"estimate", p.estimate},   {"wilson95", wilson_json(p.ci)},
          {"seed", p.seed},           {"rng", Philox4x32::algorithm}};
}

json to_json(const CubatureCheck& c) {
  return {{"delta", c.delta},
          {"max_monomial_error", c.max_monomial_error},
          {"max_shifted_error", c.max_shifted_error},
          {"max_reference_error", c.max_reference_error},
          {"worst_region", c.worst_region},
          {"regions", c.regions},
          {"monomials", c.monomials},
          {"shifted", c.shifted},
          {"passed", c.passed}};
}

json to_json(const CoverageCheck& c) {
  return {{"samples", c.samples}, {"exactly_one", c.exactly_one}, {"uncovered", c.uncovered}, {"multiple", c.multiple}};
}

json to_json(const SphereCubature& c, bool with_points) {
  json boxes = json::array();
  for (std::size_t b = 0; b < c.partition.boxes.size(); ++b) {
    const AngleBox& box = c.partition.boxes[b];
    json sides = json::array();
    for (const Interval& iv : box.sides) sides.push_back(interval_json(iv));
    json entry = {{"angle_intervals", sides},
                  {"mass", box.mass},
                  {"diameter_bound", box.diameter_bound},
                  {"diameter_sampled", box.diameter_sampled},
                  {"factor_nodes", c.factors.empty() ? json::array() : json(c.factors[b])}};
    if (with_points && !c.factors.empty()) entry["nodes"] = matrix_rows(c.points(b));
    boxes.push_back(std::move(entry));
  }
  return {{"kind", "sphere_cubature"},
          {"d", c.partition.d},
          {"k", c.k},
          {"tau", c.partition.tau},
          {"delta", c.delta},
          {"gamma", c.gamma},
          {"factor_degree", c.degree},
          {"n", c.n},
          {"points_per_box", c.factors.empty() ? 0 : c.points_per_box()},
          {"max_factor_residual", c.max_factor_residual},
          {"boxes", boxes}};
}

json to_json(const CylinderCubature& c, bool with_points) {
  json cells = json::array();
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    const CylinderCell& cell = c.cells[i];
    const double W = c.spec.W;
    json entry = {{"axis_interval", json::array({W * cell.axis.lo, W * cell.axis.hi})},
                  {"sphere_box", cell.box},
                  {"q", cell.q},
                  {"mass", cell.mass},
                  {"diameter_bound", W * cell.diameter_bound},
                  {"axis_nodes", cell.axis_nodes}};
    if (with_points) entry["nodes"] = matrix_rows(c.points(i));
    cells.push_back(std::move(entry));
  }
  const auto& s = c.spec;
  const auto& u = c.unit_spec;
  return {{"kind", "cylinder_cubature"},
          {"d", s.d},
          {"k", s.k},
          {"L", s.L},
          {"W", s.W},
          {"tau", s.tau},
          {"delta", s.delta},
          {"unit_frame", {{"L", u.L}, {"tau", u.tau}, {"delta", u.delta}}},
          {"n1", c.n1},
          {"axis_degree", c.axis_degree},
          {"points_per_cell", c.points_per_cell()},
          {"max_axis_residual", c.max_axis_residual},
          {"sphere", to_json(c.sphere, false)},
          {"cells", cells}};
}

void write_json(const std::filesystem::path& path, json j) {
  j["format_version"] = kFormatVersion;
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void append_record(const std::filesystem::path& path, json record) {
  record["format_version"] = kFormatVersion;
  std::ofstream out(path, std::ios::app);
  if (!out) throw ValidationError("cannot append to " + path.string());
  out << record.dump() << '\n';
}

void write_nodes(const std::filesystem::path& path, std::span<const double> nodes) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw ValidationError("cannot write " + path.string());
  for (double x : nodes) std::fprintf(f, "%.17g\n", x);
  std::fclose(f);
}

std::vector<double> read_nodes(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::vector<double> out;
  std::string line;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    double x;
    std::string rest;
    if (!(ss >> x) || (ss >> rest)) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected one number per line");
    }
    out.push_back(x);
  }
  return out;
}

std::string hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return hex64(fnv1a64(ss.str()));
}

}  // namespace chebyquad
