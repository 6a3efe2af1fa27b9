#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "chebyquad/error.hpp"
#include "chebyquad/measure_io.hpp"
#include "chebyquad/quadrature.hpp"
#include "chebyquad/serialize.hpp"
#include "chebyquad/verify.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace chebyquad;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

AngleBox box(std::vector<Interval> sides) {
  AngleBox b;
  b.sides = std::move(sides);
  b.mass = box_mass(b.sides);
  return b;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "chebyquad_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("moment_residual examples") {
  const double h = 1.0 / (2 * std::sqrt(3.0));
  const std::vector<double> gauss{0.5 - h, 0.5 + h};
  const ResidualReport g = moment_residual(gauss, builtin::uniform(), 3);
  CHECK(g.per_degree.size() == 3);
  CHECK(g.max <= 1e-15);

  const ResidualReport s = moment_residual(simple_approximation(builtin::uniform(), 100), builtin::uniform(), 5);
  for (double r : s.per_degree) CHECK(r <= 0.01);
  CHECK(s.max == *std::max_element(s.per_degree.begin(), s.per_degree.end()));

  const ResidualReport a = moment_residual(std::vector<double>{0.0, 1.0}, fixture::two_atoms(), 7);
  CHECK(a.max == 0.0);
}

TEST_CASE("compensated residual on many nodes") {
  const std::size_t n = 2000000;
  std::vector<double> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = (i + 0.5) / static_cast<double>(n);
  // midpoint rule error for x^2 is 1/(12 n^2)
  const ResidualReport r = moment_residual(nodes, builtin::uniform(), 2);
  CHECK(r.per_degree[0] <= 1e-15);
  CHECK(r.per_degree[1] == Approx(1.0 / (12.0 * n * n)).epsilon(1e-2));
}

TEST_CASE("reference integration examples") {
  const ReferenceValue z1 = reference_integral(box({{0, 2 * pi}}), plain_monomial({1, 0}));
  CHECK(std::abs(z1.value) < 1e-12);

  const ReferenceValue area = reference_integral(box({{0, 2 * pi}, {0, pi}}), plain_monomial({0, 0, 0}));
  CHECK(std::abs(area.value - 4 * pi) <= 1e-10);

  const ReferenceValue octant = reference_integral(box({{0, pi / 2}, {0, pi / 2}}), plain_monomial({0, 0, 1}));
  CHECK(std::abs(octant.value - pi / 4) <= 1e-10);
  CHECK(octant.error_estimate >= std::abs(octant.value - pi / 4) - 1e-15);

  const ReferenceValue avg = reference_average(box({{0, pi / 2}, {0, pi / 2}}), plain_monomial({0, 0, 1}));
  CHECK(avg.value == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("reference integration error estimates bound the true error") {
  // int over [a,b] x [c,d] of z_3^2 = cos^2(theta) sin(theta): closed form
  for (double c : {0.1, 0.7, 1.9}) {
    const double d = c + 0.9;
    const AngleBox b = box({{0.3, 1.1}, {c, d}});
    const ReferenceValue v = reference_integral(b, plain_monomial({0, 0, 2}), 16);
    const double exact = 0.8 * (std::pow(std::cos(c), 3) - std::pow(std::cos(d), 3)) / 3.0;
    CHECK(std::abs(v.value - exact) <= std::max(v.error_estimate, 1e-15));
  }
}

TEST_CASE("newton_oracle examples") {
  const Eigen::VectorXd z = vec({0.25, 0.75});
  CHECK((newton_oracle(z, tk(z)) - z).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::VectorXd w = newton_oracle(z, vec({1.002, 0.625}));
  const auto [w1, w2] = oracle::quadratic_nodes(1.002, 0.625);
  CHECK(std::abs(std::min(w(0), w(1)) - w1) <= 1e-12);
  CHECK(std::abs(std::max(w(0), w(1)) - w2) <= 1e-12);
  CHECK_THROWS_AS((void)newton_oracle(z, vec({1.0, 0.2})), NumericalError);
}

TEST_CASE("property: residuals reproduce from serialized artifacts") {
  const QuadratureResult q = construct_quadrature(builtin::linear_density(1, 2), 3, 400, std::nullopt, Mode::best_effort);
  const auto nodes_path = scratch("nodes.txt");
  const auto measure_path = scratch("measure.json");
  write_nodes(nodes_path, q.nodes);
  write_json(measure_path, measure_to_json(builtin::linear_density(1, 2)));

  const std::vector<double> back = read_nodes(nodes_path);
  CHECK(back == q.nodes);
  const Measure1D m = parse_measure_file(measure_path);
  const ResidualReport a = moment_residual(q.nodes, builtin::linear_density(1, 2), 3);
  const ResidualReport b = moment_residual(back, m, 3);
  CHECK(a.nodes_hash == b.nodes_hash);
  CHECK(a.nodes_hash == hash_nodes(back));
  CHECK(hash_file(nodes_path) == a.nodes_hash);
  CHECK(std::abs(a.max - b.max) <= 1e-15);
}

TEST_CASE("serialized reports carry the format version") {
  const auto path = scratch("report.json");
  write_json(path, to_json(moment_residual(std::vector<double>{0.5}, builtin::uniform(), 2)));
  const nlohmann::json j = read_json(path);
  CHECK(j["format_version"] == kFormatVersion);
  CHECK(j["kind"] == "residual_report");
  CHECK(j["per_degree"].size() == 2);

  const auto bad = scratch("bad_nodes.txt");
  {
    std::ofstream out(bad);
    out << "0.5\nnot-a-number\n";
  }
  CHECK_THROWS_AS((void)read_nodes(bad), ValidationError);
}

TEST_CASE("hashes") {
  CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
  CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
  CHECK(hash_measure(builtin::uniform()) == hash_measure(parse_measure({{"builtin", "uniform"}})));
  CHECK(hash_measure(builtin::uniform()) != hash_measure(builtin::linear_density(1, 2)));
}

TEST_CASE("random unit vectors") {
  Philox4x32 rng(3, 0);
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (int i = 0; i < 20000; ++i) {
    const Eigen::VectorXd v = random_unit_vector(3, rng);
    CHECK(std::abs(v.norm() - 1.0) < 1e-14);
    mean += v;
  }
  CHECK((mean / 20000.0).cwiseAbs().maxCoeff() < 0.03);
}
