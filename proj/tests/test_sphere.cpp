#include <cmath>
#include <doctest.h>
#include <numbers>
#include <random>

#include "chebyquad/config.hpp"
#include "chebyquad/cubature_sphere.hpp"
#include "chebyquad/error.hpp"
#include "chebyquad/verify.hpp"
#include "oracles.hpp"

using namespace chebyquad;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double e = std::numbers::e;

const SphereCubature& circle() {
  static const SphereCubature c = sphere_cubature(1, 1, 0.5, 0.1);
  return c;
}

const SphereCubature& sphere2() {
  static const SphereCubature c = sphere_cubature(2, 2, 0.5, 0.1);
  return c;
}

}  // namespace

TEST_CASE("m0 examples") {
  CHECK(m0(1, 1, 0.5) == 4);
  for (int d = 1; d <= 3; ++d)
    for (int k = 1; k <= 3; ++k) CHECK(m0(d, k, 1.001 * 2.0 * d * std::pow(2, k) * std::pow(k * e / 2, 2)) == 1);
  for (int k = 1; k <= 3; ++k) {
    int last = 1 << 30;
    for (double delta = 1e-6; delta < 10; delta *= 1.7) {
      const int m = m0(2, k, delta);
      CHECK(m <= last);
      last = m;
    }
  }
}

TEST_CASE("spherical_map examples") {
  const std::vector<double> a1{pi / 2};
  const Eigen::VectorXd x1 = spherical_map(a1);
  CHECK(x1(0) == Approx(1.0));
  CHECK(std::abs(x1(1)) < 1e-15);

  const std::vector<double> a2{0.0, pi / 2};
  const Eigen::VectorXd x2 = spherical_map(a2);
  CHECK(std::abs(x2(0)) < 1e-15);
  CHECK(x2(1) == Approx(1.0));
  CHECK(std::abs(x2(2)) < 1e-15);
}

TEST_CASE("property: spherical_map lands on the sphere and embeds recursively") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int d = 1; d <= 4; ++d) {
    for (int trial = 0; trial < 250; ++trial) {
      std::vector<double> ang(d);
      ang[0] = 2 * pi * u(gen);
      for (int q = 1; q < d; ++q) ang[q] = pi * u(gen);
      const Eigen::VectorXd x = spherical_map(ang);
      CHECK(x.norm() == Approx(1.0).epsilon(1e-14));
      if (d > 1) {
        const std::vector<double> inner(ang.begin(), ang.end() - 1);
        const Eigen::VectorXd y = spherical_map(inner);
        const double th = ang.back();
        CHECK((x.head(d) - std::sin(th) * y).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(x(d) == Approx(std::cos(th)));
      }
      const std::vector<double> back = inverse_spherical_map(x);
      CHECK((spherical_map(back) - x).norm() < 1e-12);
    }
  }
}

TEST_CASE("partition examples") {
  const SpherePartition p1 = partition_sphere(1, 1.0);
  CHECK(p1.boxes.size() == 7);
  for (const AngleBox& b : p1.boxes) CHECK(b.sides[0].length() == Approx(2 * pi / 7));

  const SpherePartition p2 = partition_sphere(2, 0.5);
  CHECK(std::abs(p2.total_mass() - 4 * pi) <= 1e-10);
  CHECK(std::abs(partition_sphere(1, 0.3).total_mass() - 2 * pi) <= 1e-10);

  CHECK_THROWS_AS((void)partition_sphere(2, 0.0), ParameterError);
  CHECK_THROWS_AS((void)partition_sphere(2, 1.5), ParameterError);
}

TEST_CASE("property: partition certificates with the frozen constants") {
  for (int d = 1; d <= 3; ++d) {
    const SphereConstants sc = sphere_constants(d);
    for (double tau : {0.2, 0.5, 0.8}) {
      if (d == 3 && tau < 0.5) continue;
      const SpherePartition p = partition_sphere(d, tau);
      CHECK(std::abs(p.total_mass() - sphere_area(d)) <= 1e-10);
      const CertificateCheck c = check_certificates(p, sc.C, sc.c);
      CHECK(c.holds);
      CHECK(static_cast<double>(p.boxes.size()) <= sc.C * std::pow(tau, -d));
      for (const AngleBox& b : p.boxes) {
        CHECK(b.diameter_bound <= sc.C * tau);
        CHECK(b.diameter_sampled <= b.diameter_bound * (1 + 1e-12));
        CHECK(b.mass >= sc.c * std::pow(tau, d));
        for (const Interval& s : b.sides) CHECK(s.length() < 1.0);
      }
    }
  }
}

TEST_CASE("box masses agree with a dense product rule") {
  const SpherePartition p = partition_sphere(2, 0.5);
  for (std::size_t i = 0; i < p.boxes.size(); i += 7) {
    const AngleBox& b = p.boxes[i];
    const double s1 = oracle::sine_moment(0, 1, b.sides[1].lo, b.sides[1].hi, 2000);
    CHECK(b.mass == Approx(b.sides[0].length() * s1).epsilon(1e-12));
  }
}

TEST_CASE("sine_weight_quadrature examples") {
  const SineQuadrature s0 = sine_weight_quadrature(0, {0, 1}, 1, 0.5, 60);
  REQUIRE(s0.success);
  CHECK(s0.degree >= sine_degree(1, 0.5));
  for (int s = 1; s <= s0.degree; ++s) {
    double avg = 0.0;
    for (double t : s0.nodes) avg += std::pow(t, s);
    avg /= static_cast<double>(s0.nodes.size());
    CHECK(std::abs(avg - 1.0 / (s + 1)) <= 1e-9);
  }
  double mean = 0.0;
  for (double t : s0.nodes) mean += t;
  CHECK(mean / static_cast<double>(s0.nodes.size()) == Approx(0.5).epsilon(1e-9));

  const double gamma = 0.1;
  const SineQuadrature s2 = sine_weight_quadrature(2, {1.0, 1.8}, 2, gamma, 120);
  REQUIRE(s2.success);
  CHECK(sine_estimate_error(s2, 2) <= gamma);
  const double mass = oracle::sine_moment(0, 2, 1.0, 1.8);
  for (int s = 1; s <= s2.degree; ++s) {
    double avg = 0.0;
    for (double t : s2.nodes) avg += std::pow(t, s);
    avg /= static_cast<double>(s2.nodes.size());
    CHECK(avg == Approx(oracle::sine_moment(s, 2, 1.0, 1.8) / mass).epsilon(1e-9));
  }

  CHECK_THROWS_AS((void)sine_weight_quadrature(1, {1.0, 2.5}, 2, gamma, 120), ParameterError);
  CHECK_THROWS_AS((void)sine_weight_quadrature(1, {2.8, 3.5}, 2, gamma, 120), ParameterError);
}

TEST_CASE("circle cubature: per-arc errors against exact arc integrals") {
  const SphereCubature& c = circle();
  for (std::size_t b = 0; b < c.partition.boxes.size(); ++b) {
    const Interval arc = c.partition.boxes[b].sides[0];
    const Eigen::MatrixXd pts = c.points(b);
    const double exact_x = (std::cos(arc.lo) - std::cos(arc.hi)) / arc.length();
    const double exact_y = (std::sin(arc.hi) - std::sin(arc.lo)) / arc.length();
    CHECK(std::abs(pts.col(0).mean() - exact_x) <= 0.1);
    CHECK(std::abs(pts.col(1).mean() - exact_y) <= 0.1);
  }
}

TEST_CASE("property: nodes lie on the sphere inside their box, N = n^d") {
  for (const SphereCubature* c : {&circle(), &sphere2()}) {
    const int d = c->partition.d;
    CHECK(c->points_per_box() == static_cast<long long>(std::pow(c->n, d)));
    for (std::size_t b = 0; b < c->partition.boxes.size(); ++b) {
      const Eigen::MatrixXd pts = c->points(b);
      CHECK(pts.rows() == c->points_per_box());
      CHECK(c->factors[b].size() == static_cast<std::size_t>(d));
      for (const auto& f : c->factors[b]) CHECK(f.size() == static_cast<std::size_t>(c->n));
      for (Eigen::Index i = 0; i < pts.rows(); i += 97) {
        const Eigen::VectorXd x = pts.row(i).transpose();
        CHECK(std::abs(x.norm() - 1.0) <= 1e-12);
        CHECK(c->partition.boxes[b].contains(inverse_spherical_map(x), 1e-9));
      }
    }
  }
}

TEST_CASE("property: odd monomials average out over the whole partition") {
  const SphereCubature& c = sphere2();
  Eigen::Vector3d total = Eigen::Vector3d::Zero();
  for (std::size_t b = 0; b < c.partition.boxes.size(); ++b)
    total += c.partition.boxes[b].mass * c.points(b).colwise().mean().transpose();
  total /= 4 * pi;
  CHECK(total.cwiseAbs().maxCoeff() <= c.delta);
}

TEST_CASE("sphere cubature at d = 2 passes the monomial and shifted checks") {
  const CubatureCheck check = verify_sphere(sphere2(), 0.1, 20, 7);
  CHECK(check.passed);
  CHECK(check.max_monomial_error <= 0.1);
  CHECK(check.max_shifted_error <= 0.1);
  CHECK(check.max_reference_error <= 1e-10);
  CHECK(check.monomials == 9);
}
