// chebyquad command-line driver.
//
// Exit codes: 0 success, 1 usage or validation, 2 verification failure,
// 3 numerical failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chebyquad/bounds.hpp"
#include "chebyquad/config.hpp"
#include "chebyquad/cubature_cylinder.hpp"
#include "chebyquad/cubature_sphere.hpp"
#include "chebyquad/error.hpp"
#include "chebyquad/measure_io.hpp"
#include "chebyquad/parallel.hpp"
#include "chebyquad/quadrature.hpp"
#include "chebyquad/random_cubature.hpp"
#include "chebyquad/serialize.hpp"
#include "chebyquad/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace chebyquad;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitNumerical = 3;
constexpr double kResidualTol = 1e-9;

struct Manifest {
  explicit Manifest(std::string name) : subcommand(std::move(name)) {}

  std::string subcommand;
  json parameters = json::object();
  std::map<std::string, std::string> inputs;
  std::vector<fs::path> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void input(const fs::path& p) { inputs[p.string()] = hash_file(p); }

  void write(const fs::path& dir, unsigned threads) const {
    json out = {{"subcommand", subcommand},
                {"parameters", parameters},
                {"version", CHEBYQUAD_VERSION},
                {"threads", resolve_threads(threads)},
                {"constants", constants().source}};
    json in = json::object();
    for (const auto& [path, hash] : inputs) in[path] = hash;
    out["inputs"] = in;
    json files = json::object();
    for (const fs::path& p : outputs) files[p.filename().string()] = hash_file(p);
    out["outputs"] = files;
    out["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_json(dir / "manifest.json", out);
  }
};

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ValidationError("not a number: '" + item + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
  std::string measure;
  int k = 0;
  std::optional<double> modulus_c;
  double modulus_beta = 1.0;
  std::string out = ".";
};

int cmd_bounds(const BoundsArgs& a, unsigned threads) {
  Manifest man{"bounds"};
  const Measure1D m = parse_measure_file(a.measure);
  man.input(a.measure);
  std::optional<PowerLawModulus> mod;
  if (a.modulus_c) mod = PowerLawModulus{*a.modulus_c, a.modulus_beta};
  // the node count is affine invariant; the upper bound is stated on [0, 1]
  const bool rescale = m.support().lo < 0.0 || m.support().hi > 1.0;
  UpperBoundReport up = upper_bound(rescale ? affine_rescale(m, {0.0, 1.0}) : m, a.k, mod);
  if (rescale) up.note += (up.note.empty() ? "" : "; ") + std::string("upper bound for the measure rescaled to [0, 1]");
  const LowerBoundReport lo = lower_bound(m, a.k);
  man.parameters = {{"measure", a.measure}, {"k", a.k}};
  if (mod) man.parameters["modulus"] = {{"c", mod->c}, {"beta", mod->beta}};

  const fs::path dir = prepare_dir(a.out);
  const fs::path report = dir / "bounds.json";
  write_json(report, {{"kind", "bounds"}, {"upper", to_json(up)}, {"lower", to_json(lo)}});
  man.outputs.push_back(report);
  man.write(dir, threads);

  double lower = 1.0;
  if (lo.moment_bound) lower = std::max(lower, *lo.moment_bound);
  if (lo.bernstein_bound) lower = std::max(lower, *lo.bernstein_bound);
  std::printf("k=%d lower=%.17g upper=%lld%s%s\n", a.k, lower, up.n_guaranteed,
              up.large_atom_referral ? " large-atom-referral" : "",
              (up.n_guaranteed > 0 && lower > static_cast<double>(up.n_guaranteed)) ? " INCONSISTENT" : "");
  if (!up.note.empty()) std::printf("%s\n", up.note.c_str());
  return kExitOk;
}

struct ConstructArgs {
  std::string measure;
  int k = 0;
  std::optional<long long> n;
  bool best_effort = false;
  std::optional<double> eps;
  std::string target;
  std::string out = ".";
};

int cmd_construct(const ConstructArgs& a, unsigned threads) {
  Manifest man{"construct"};
  const Measure1D m = parse_measure_file(a.measure);
  man.input(a.measure);
  const Mode mode = a.best_effort ? Mode::best_effort : Mode::guaranteed;
  QuadratureResult res;
  long long n = 0;
  if (a.eps) {
    const LargeAtomParameters lp = large_atom_parameters(m, a.k, *a.eps);
    n = a.n.value_or(lp.n_required);
    res = construct_quadrature_large_atoms(m, a.k, *a.eps, n);
  } else {
    std::optional<MomentVector> target;
    if (!a.target.empty()) {
      const std::vector<double> p = parse_list(a.target);
      target = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
    }
    if (a.n) {
      n = *a.n;
    } else {
      if (a.best_effort) throw ParameterError("construct: best-effort mode needs -n");
      n = guarantee_parameters(m, a.k).n_required;
      if (n <= 0) throw ParameterError("construct: rho = 0 for this measure; pass --eps for the large-atom path");
    }
    res = construct_quadrature(m, a.k, n, target, mode);
  }
  man.parameters = {{"measure", a.measure}, {"k", a.k}, {"n", n}, {"mode", to_string(res.mode)},
                    {"guaranteed", res.mode == Mode::guaranteed}};
  if (a.eps) man.parameters["eps"] = *a.eps;
  if (!a.target.empty()) man.parameters["target"] = a.target;

  const fs::path dir = prepare_dir(a.out);
  const fs::path nodes = dir / "nodes.txt";
  write_nodes(nodes, res.nodes);
  json result = to_json(res);
  result.erase("nodes");
  const fs::path result_path = dir / "result.json";
  write_json(result_path, result);
  man.outputs = {nodes, result_path};
  if (!a.target.empty()) {
    man.write(dir, threads);
  } else {
    const ResidualReport rep = moment_residual(res.nodes, m, a.k);
    const fs::path rep_path = dir / "residual.json";
    write_json(rep_path, to_json(rep));
    man.outputs.push_back(rep_path);
    man.write(dir, threads);
  }
  std::printf("n=%zu k=%d mode=%s residual=%.3e%s\n", res.nodes.size(), a.k, to_string(res.mode), res.residual,
              res.success ? "" : " FAILED");
  if (!res.success) return kExitVerify;
  return kExitOk;
}

struct SphereArgs {
  int d = 0;
  int k = 0;
  double tau = 0.0;
  double delta = 0.0;
  std::optional<long long> n;
  bool verify = false;
  bool points = false;
  std::uint64_t seed = 1;
  std::string out = ".";
};

int cmd_sphere(const SphereArgs& a, unsigned threads) {
  Manifest man{"sphere"};
  man.parameters = {{"d", a.d}, {"k", a.k}, {"tau", a.tau}, {"delta", a.delta}, {"seed", a.seed}};
  SphereOptions opt;
  opt.n = a.n;
  opt.threads = threads;
  const SphereCubature cub = sphere_cubature(a.d, a.k, a.tau, a.delta, opt);
  man.parameters["n"] = cub.n;
  json bundle = to_json(cub, a.points);
  int code = kExitOk;
  if (auto it = constants().sphere.find(a.d); it != constants().sphere.end()) {
    const CertificateCheck cert = check_certificates(cub.partition, it->second.C, it->second.c);
    bundle["certificates"] = {{"holds", cert.holds},
                              {"max_diameter_ratio", cert.max_diameter_ratio},
                              {"min_mass_ratio", cert.min_mass_ratio},
                              {"count_ratio", cert.count_ratio}};
  }
  if (a.verify) {
    const CubatureCheck check = verify_sphere(cub, a.delta, 20, a.seed, threads);
    bundle["verification"] = to_json(check);
    if (!check.passed) code = kExitVerify;
    std::printf("verification: monomial %.3e shifted %.3e (delta %g) %s\n", check.max_monomial_error,
                check.max_shifted_error, a.delta, check.passed ? "PASS" : "FAIL");
  }
  const fs::path dir = prepare_dir(a.out);
  const fs::path path = dir / "sphere.json";
  write_json(path, bundle);
  man.outputs.push_back(path);
  man.write(dir, threads);
  std::printf("boxes=%zu n=%lld points_per_box=%lld degree=%d\n", cub.partition.boxes.size(), cub.n,
              cub.points_per_box(), cub.degree);
  return code;
}

struct CylinderArgs {
  CylinderSpec spec;
  std::optional<long long> n1;
  bool verify = false;
  bool points = false;
  std::uint64_t seed = 1;
  std::string out = ".";
};

int cmd_cylinder(const CylinderArgs& a, unsigned threads) {
  Manifest man{"cylinder"};
  const CylinderSpec& s = a.spec;
  man.parameters = {{"d", s.d}, {"k", s.k}, {"L", s.L}, {"W", s.W}, {"tau", s.tau}, {"delta", s.delta},
                    {"seed", a.seed}};
  CylinderOptions opt;
  opt.n1 = a.n1;
  opt.threads = threads;
  const CylinderCubature cyl = cylinder_cubature(s, opt);
  man.parameters["n1"] = cyl.n1;
  json bundle = to_json(cyl, a.points);
  int code = kExitOk;
  if (a.verify) {
    const CubatureCheck check = verify_cylinder(cyl, 20, a.seed, threads);
    const CoverageCheck cover = cylinder_coverage(cyl, 1000, a.seed);
    double mass_err = 0.0;
    for (const auto& c : cyl.cells) mass_err = std::max(mass_err, std::abs(c.mass - std::pow(cyl.unit_spec.tau, s.d - 1)));
    const double count_ratio = static_cast<double>(cyl.cells.size()) /
                               (cyl.unit_spec.L * std::pow(cyl.unit_spec.tau, -(s.d - 1)));
    const double C = cylinder_constants(s.d).C;
    const bool ok = check.passed && cover.exactly_one == cover.samples && mass_err <= 1e-10 && count_ratio <= C;
    bundle["verification"] = {{"moments", to_json(check)},
                              {"coverage", to_json(cover)},
                              {"max_mass_error", mass_err},
                              {"count_ratio", count_ratio},
                              {"passed", ok}};
    if (!ok) code = kExitVerify;
    std::printf("verification: monomial %.3e shifted %.3e (delta %g) coverage %lld/%lld mass err %.1e %s\n",
                check.max_monomial_error, check.max_shifted_error, check.delta, cover.exactly_one, cover.samples,
                mass_err, ok ? "PASS" : "FAIL");
  }
  const fs::path dir = prepare_dir(a.out);
  const fs::path path = dir / "cylinder.json";
  write_json(path, bundle);
  man.outputs.push_back(path);
  man.write(dir, threads);
  std::printf("cells=%zu n1=%lld points_per_cell=%lld\n", cyl.cells.size(), cyl.n1, cyl.points_per_cell());
  return code;
}

struct RandArgs {
  std::string config;
  std::string log = "randcube.log";
  std::string out = ".";
};

// Config: {"n", "k", "d", "eps" (number or list), "reps", "seed",
//          optional "probe": {"bin_radius", "reps"}}.
int cmd_randcube(const RandArgs& a, unsigned threads) {
  Manifest man{"randcube"};
  const json cfg = read_json(a.config);
  man.input(a.config);
  long long n, reps;
  int k, d;
  std::uint64_t seed;
  std::vector<double> eps;
  try {
    n = cfg.at("n").get<long long>();
    k = cfg.at("k").get<int>();
    d = cfg.at("d").get<int>();
    reps = cfg.at("reps").get<long long>();
    seed = cfg.at("seed").get<std::uint64_t>();
    if (cfg.at("eps").is_array()) eps = cfg.at("eps").get<std::vector<double>>();
    else eps = {cfg.at("eps").get<double>()};
  } catch (const json::exception& e) {
    throw ValidationError(a.config + ": " + e.what());
  }
  man.parameters = cfg;
  const fs::path dir = prepare_dir(a.out);
  const fs::path log = dir / a.log;
  for (const SmallBallEstimate& s : small_ball_curve(n, k, d, eps, reps, seed, threads)) {
    append_record(log, to_json(s));
    std::printf("eps=%g estimate=%.6f wilson95=[%.6f, %.6f] hits=%lld/%lld\n", s.eps, s.estimate, s.ci.lo, s.ci.hi,
                s.hit_count, s.repetitions);
  }
  if (cfg.contains("probe")) {
    const json& pr = cfg["probe"];
    const DensityProbe p = empirical_density_probe(n, k, d, pr.value("reps", reps), pr.at("bin_radius").get<double>(),
                                                   seed, threads);
    append_record(log, to_json(p));
    std::printf("density probe=%.6f wilson95=[%.6f, %.6f]\n", p.estimate, p.ci.lo, p.ci.hi);
  }
  man.outputs.push_back(log);
  man.write(dir, threads);
  return kExitOk;
}

struct VerifyArgs {
  std::string measure;
  std::string nodes;
  int k = 0;
  double tol = kResidualTol;
  std::string out = ".";
};

int cmd_verify(const VerifyArgs& a, unsigned threads) {
  Manifest man{"verify"};
  const Measure1D m = parse_measure_file(a.measure);
  const std::vector<double> nodes = read_nodes(a.nodes);
  man.input(a.measure);
  man.input(a.nodes);
  man.parameters = {{"measure", a.measure}, {"nodes", a.nodes}, {"k", a.k}, {"tol", a.tol}};
  const ResidualReport rep = moment_residual(nodes, m, a.k);
  const fs::path dir = prepare_dir(a.out);
  const fs::path path = dir / "verify.json";
  json j = to_json(rep);
  j["tolerance"] = a.tol;
  j["passed"] = rep.max <= a.tol;
  write_json(path, j);
  man.outputs.push_back(path);
  man.write(dir, threads);
  std::printf("n=%lld k=%d max residual=%.3e %s\n", rep.n, a.k, rep.max, rep.max <= a.tol ? "PASS" : "FAIL");
  return rep.max <= a.tol ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chebyshev-type quadrature and local cubature toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.set_version_flag("--version", CHEBYQUAD_VERSION);

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "upper and lower bounds on the node count");
  bounds->add_option("-m,--measure", ba.measure, "measure JSON")->required()->check(CLI::ExistingFile);
  bounds->add_option("-k", ba.k, "degree")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--modulus-c", ba.modulus_c, "power-law modulus constant c in R(delta) >= c delta^beta");
  bounds->add_option("--modulus-beta", ba.modulus_beta, "power-law modulus exponent");
  bounds->add_option("-o,--out", ba.out, "output directory");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "equal-weight nodes matching k moments");
  construct->add_option("-m,--measure", ca.measure, "measure JSON")->required()->check(CLI::ExistingFile);
  construct->add_option("-k", ca.k, "degree")->required()->check(CLI::PositiveNumber);
  construct->add_option("-n", ca.n, "node count (default: the guaranteed count)");
  construct->add_flag("--best-effort", ca.best_effort, "allow n below the guaranteed count");
  construct->add_option("--eps", ca.eps, "large-atom threshold");
  construct->add_option("--target", ca.target, "comma-separated normalized target moments");
  construct->add_option("-o,--out", ca.out, "output directory");

  SphereArgs sa;
  auto* sphere = app.add_subcommand("sphere", "local approximate cubature on S^d");
  sphere->add_option("-d", sa.d, "sphere dimension")->required();
  sphere->add_option("-k", sa.k, "degree")->required();
  sphere->add_option("--tau", sa.tau, "partition scale")->required();
  sphere->add_option("--delta", sa.delta, "accuracy")->required();
  sphere->add_option("-n", sa.n, "nodes per factor (default: smallest that succeeds)");
  sphere->add_flag("--verify", sa.verify, "check every box against reference integration");
  sphere->add_flag("--points", sa.points, "write product points");
  sphere->add_option("--seed", sa.seed, "seed for the random shifted monomials");
  sphere->add_option("-o,--out", sa.out, "output directory");

  CylinderArgs cya;
  auto* cylinder = app.add_subcommand("cylinder", "local approximate cubature on a cylinder");
  cylinder->add_option("-d", cya.spec.d, "ambient dimension")->required();
  cylinder->add_option("-k", cya.spec.k, "degree")->required();
  cylinder->add_option("-L", cya.spec.L, "half length")->required();
  cylinder->add_option("-W", cya.spec.W, "radius")->required();
  cylinder->add_option("--tau", cya.spec.tau, "partition scale")->required();
  cylinder->add_option("--delta", cya.spec.delta, "accuracy")->required();
  cylinder->add_option("--n1", cya.n1, "nodes per factor (default: smallest that succeeds)");
  cylinder->add_flag("--verify", cya.verify, "check cells, coverage and masses");
  cylinder->add_flag("--points", cya.points, "write product points");
  cylinder->add_option("--seed", cya.seed, "seed for shifts and coverage samples");
  cylinder->add_option("-o,--out", cya.out, "output directory");

  RandArgs ra;
  auto* rand = app.add_subcommand("randcube", "random cubature experiments on [-1,1]^d");
  rand->add_option("-c,--config", ra.config, "experiment JSON")->required()->check(CLI::ExistingFile);
  rand->add_option("--log", ra.log, "results log file name");
  rand->add_option("-o,--out", ra.out, "output directory");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "moment residual of a node file");
  verify->add_option("-m,--measure", va.measure, "measure JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--nodes", va.nodes, "node file")->required()->check(CLI::ExistingFile);
  verify->add_option("-k", va.k, "degree")->required()->check(CLI::PositiveNumber);
  verify->add_option("--tol", va.tol, "residual tolerance");
  verify->add_option("-o,--out", va.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bounds) return cmd_bounds(ba, threads);
    if (*construct) return cmd_construct(ca, threads);
    if (*sphere) return cmd_sphere(sa, threads);
    if (*cylinder) return cmd_cylinder(cya, threads);
    if (*rand) return cmd_randcube(ra, threads);
    if (*verify) return cmd_verify(va, threads);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ConstructionError& e) {
    std::cerr << "construction failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
