#include <cmath>
#include <doctest.h>

#include "chebyquad/config.hpp"
#include "chebyquad/cubature_cylinder.hpp"
#include "chebyquad/error.hpp"
#include "chebyquad/verify.hpp"

using namespace chebyquad;
using doctest::Approx;

namespace {

double quad_moment(double L, double a, double b, int r) {
  // v(x) = 1 + (x + 2L)/(4L) = 1.5 + x/(4L)
  auto prim = [&](double x) { return 1.5 * std::pow(x, r + 1) / (r + 1) + std::pow(x, r + 2) / ((r + 2) * 4 * L); };
  return prim(b) - prim(a);
}

}  // namespace

TEST_CASE("axis_density examples") {
  for (double L : {1.0, 10.0}) {
    CHECK(axis_density(L, -2 * L) == 1.0);
    CHECK(axis_density(L, 2 * L) == 2.0);
    CHECK(axis_density(L, 0.0) == 1.5);
  }
  for (int r = 0; r <= 4; ++r) CHECK(axis_moment(10, -3, 7, r) == Approx(quad_moment(10, -3, 7, r)).epsilon(1e-13));
  CHECK(axis_mass(10, -3, 7) == Approx(quad_moment(10, -3, 7, 0)));
}

TEST_CASE("axis_intervals examples") {
  const auto iv = axis_intervals(1.0, 0.5);
  REQUIRE(!iv.empty());
  const double t = (-9 + std::sqrt(97.0)) / 2;
  CHECK(t == Approx(0.42443).epsilon(1e-5));
  CHECK(iv[0].lo == -1.5);
  CHECK(iv[0].hi == Approx(-1.5 + t).epsilon(1e-13));
  CHECK(iv[0].hi == Approx(-1.07557).epsilon(1e-5));
  for (std::size_t i = 0; i < iv.size(); ++i) {
    CHECK(axis_mass(1.0, iv[i].lo, iv[i].hi) == Approx(0.5).epsilon(1e-12));
    CHECK(iv[i].length() <= 0.5);
    CHECK(iv[i].hi <= 1.5 + 1e-12);
    if (i > 0) CHECK(iv[i].lo == iv[i - 1].hi);
  }
  CHECK(iv.back().hi > 1.0);
  CHECK_THROWS_AS((void)axis_intervals(1.0, 5.0), ParameterError);
}

TEST_CASE("axis_quadrature examples") {
  const auto iv = axis_intervals(1.0, 0.5);
  const AxisQuadrature a = axis_quadrature(iv[0], 1.0, 2, 60);
  REQUIRE(a.success);
  CHECK(a.residual <= 1e-9);
  const double mass = axis_mass(1.0, iv[0].lo, iv[0].hi);
  for (int r = 0; r <= 2; ++r) {
    double avg = 0.0;
    for (double x : a.nodes) avg += std::pow(x, r);
    avg /= static_cast<double>(a.nodes.size());
    CHECK(std::abs(avg - quad_moment(1.0, iv[0].lo, iv[0].hi, r) / mass) <= 1e-9 * std::max(1.0, std::abs(avg)));
  }
  for (double x : a.nodes) CHECK(iv[0].contains(x, 1e-12));
}

TEST_CASE("validation of the cylinder parameters") {
  CylinderSpec s;
  s.L = cylinder_constants(3).min_L * 0.5;
  CHECK_THROWS_AS(validate(s), ParameterError);
  s = CylinderSpec{};
  s.tau = 1.5;
  CHECK_THROWS_AS(validate(s), ParameterError);
  s = CylinderSpec{};
  s.delta = 1.0;
  CHECK_THROWS_AS(validate(s), ParameterError);
  s = CylinderSpec{};
  s.d = 2;
  CHECK_THROWS_AS(validate(s), ParameterError);
  CHECK_NOTHROW(validate(CylinderSpec{}));
}

TEST_CASE("layout: masses, disjointness, counts") {
  const CylinderSpec spec{};
  const CylinderCubature lay = cylinder_layout(spec);
  const CylinderConstants cc = cylinder_constants(3);
  CHECK(static_cast<double>(lay.cells.size()) <= cc.C * spec.L * std::pow(spec.tau, -2));
  for (const CylinderCell& c : lay.cells) {
    CHECK(std::abs(c.mass - 0.25) <= 1e-10);
    CHECK(c.diameter_bound <= cc.C * spec.tau);
    CHECK(c.axis.lo >= -1.5 * spec.L - 1e-12);
    CHECK(c.axis.hi <= 1.5 * spec.L + 1e-12);
  }
  // cells with the same sphere box tile the axis without overlap
  for (std::size_t i = 1; i < lay.cells.size(); ++i) {
    if (lay.cells[i].box == lay.cells[i - 1].box) CHECK(lay.cells[i].axis.lo == lay.cells[i - 1].axis.hi);
  }
}

TEST_CASE("small cylinder end to end, with W rescaling") {
  CylinderSpec spec;
  spec.L = 2.0 * cylinder_constants(3).min_L;
  spec.tau = 0.8;
  spec.delta = 0.2;
  const CylinderCubature c = cylinder_cubature(spec);
  CHECK(c.points_per_cell() == c.n1 * c.n1);
  const CoverageCheck cov = cylinder_coverage(c, 500, 3);
  CHECK(cov.exactly_one == cov.samples);
  const CubatureCheck check = verify_cylinder(c, 20, 3);
  CHECK(check.passed);
  CHECK(check.max_reference_error <= 1e-10);

  CylinderSpec wide = spec;
  wide.W = 2.0;
  wide.L = spec.L * 2.0;
  wide.tau = spec.tau * 2.0;
  wide.delta = spec.delta * 2.0;
  const CylinderCubature cw = cylinder_cubature(wide);
  CHECK(cw.unit_spec.L == c.unit_spec.L);
  CHECK(cw.unit_spec.tau == c.unit_spec.tau);
  CHECK(cw.unit_spec.delta == c.unit_spec.delta);
  REQUIRE(cw.cells.size() == c.cells.size());
  const MultiIndexBasis basis(1, 3);
  for (std::size_t i = 0; i < c.cells.size(); i += 5) {
    const Eigen::MatrixXd a = c.points(i);
    const Eigen::MatrixXd b = cw.points(i);
    CHECK(b == 2.0 * a);
    // moments scale by W^{|alpha|}, exactly for W a power of two
    for (const auto& alpha : basis.indices()) {
      double ma = 0.0, mb = 0.0;
      for (Eigen::Index r = 0; r < a.rows(); ++r) {
        double pa = 1.0, pb = 1.0;
        for (int j = 0; j < 3; ++j) {
          pa *= std::pow(a(r, j), alpha[j]);
          pb *= std::pow(b(r, j), alpha[j]);
        }
        ma += pa;
        mb += pb;
      }
      CHECK(mb == 2.0 * ma);
    }
  }
}
