#include <cmath>
#include <doctest.h>
#include <numbers>

#include "chebyquad/random_cubature.hpp"

using namespace chebyquad;
using doctest::Approx;

TEST_CASE("Philox4x32-10 known answers") {
  using B = Philox4x32::Block;
  CHECK(Philox4x32::generate(B{0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::generate(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::generate(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  Philox4x32 a(42, 7), b(42, 7), c(42, 8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const std::uint32_t x = a.next_u32();
    CHECK(x == b.next_u32());
    differs = differs || x != c.next_u32();
  }
  CHECK(differs);
  Philox4x32 u(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("cube_multimoments examples") {
  const Eigen::VectorXd m1 = cube_multimoments(2, 1);
  CHECK(m1(0) == 0.0);
  CHECK(m1(1) == Approx(1.0 / 3.0));
  const Eigen::VectorXd m2 = cube_multimoments(2, 2);
  Eigen::VectorXd expected(5);
  expected << 0, 0, 1.0 / 3, 0, 1.0 / 3;
  CHECK((m2 - expected).cwiseAbs().maxCoeff() < 1e-16);
  const MultiIndexBasis basis(4, 3);
  const Eigen::VectorXd m3 = cube_multimoments(4, 3);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool odd = false;
    for (int a : basis[i]) odd = odd || a % 2 == 1;
    if (odd) CHECK(m3(static_cast<Eigen::Index>(i)) == 0.0);
  }
}

TEST_CASE("sample_moment_vector examples") {
  Philox4x32 a(9, 0), b(9, 0);
  const Eigen::VectorXd v = sample_moment_vector(1, 3, 2, a);
  Eigen::VectorXd x(2);
  x(0) = b.uniform(-1, 1);
  x(1) = b.uniform(-1, 1);
  CHECK((v - multimoment_map(x, 3)).cwiseAbs().maxCoeff() < 1e-15);

  Philox4x32 c(10, 3), d(10, 3);
  CHECK(sample_moment_vector(50, 2, 2, c) == sample_moment_vector(50, 2, 2, d));
}

TEST_CASE("wilson interval") {
  const WilsonInterval z = wilson_interval(0, 100);
  CHECK(z.lo == 0.0);
  CHECK(z.hi > 0.0);
  const WilsonInterval h = wilson_interval(50, 100);
  CHECK(h.lo < 0.5);
  CHECK(h.hi > 0.5);
  CHECK(h.lo == Approx(0.4038).epsilon(1e-3));
}

TEST_CASE("small ball analytic case and limits") {
  const SmallBallEstimate s = small_ball_probability(1, 1, 1, 0.3, 100000, 12345);
  CHECK(s.ci.lo <= 0.3);
  CHECK(s.ci.hi >= 0.3);
  CHECK(s.estimate >= s.ci.lo);
  CHECK(s.estimate <= s.ci.hi);

  const SmallBallEstimate full = small_ball_probability(4, 2, 2, 100.0, 2000, 1);
  CHECK(full.estimate == 1.0);
  CHECK(full.nearest_miss == 0.0);
}

TEST_CASE("property: monotone in eps under common random numbers") {
  const std::vector<double> eps{0.05, 0.1, 0.2, 0.4, 0.8, 1.6};
  const auto curve = small_ball_curve(5, 2, 1, eps, 20000, 77);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].hit_count >= curve[i - 1].hit_count);
  for (const SmallBallEstimate& s : curve) {
    if (s.estimate == 0.0) CHECK(s.hit_count == 0);
  }
}

TEST_CASE("property: bit-identical reruns, independent of threads") {
  const SmallBallEstimate a = small_ball_probability(3, 2, 2, 0.5, 5000, 99, 1);
  const SmallBallEstimate b = small_ball_probability(3, 2, 2, 0.5, 5000, 99, 4);
  CHECK(a.hit_count == b.hit_count);
  CHECK(a.nearest_miss == b.nearest_miss);
  CHECK(small_ball_distances(3, 2, 2, 500, 99, 1) == small_ball_distances(3, 2, 2, 500, 99, 3));
}

TEST_CASE("property: unbiasedness within four standard errors") {
  const MomentStatistics st = moment_statistics(10, 2, 2, 20000, 5);
  const Eigen::VectorXd exact = cube_multimoments(2, 2);
  for (Eigen::Index i = 0; i < exact.size(); ++i)
    CHECK(std::abs(st.mean(i) - exact(i)) <= 4 * st.stddev(i) / std::sqrt(20000.0));
}

TEST_CASE("property: spread scales as 1/sqrt(n)") {
  const MomentStatistics a = moment_statistics(1000, 2, 2, 4000, 6);
  const MomentStatistics b = moment_statistics(4000, 2, 2, 4000, 6);
  for (Eigen::Index i = 0; i < a.stddev.size(); ++i) CHECK(a.stddev(i) / b.stddev(i) == Approx(2.0).epsilon(0.1));
}

TEST_CASE("density probe") {
  CHECK(ball_volume(1, 0.2) == Approx(0.4));
  CHECK(ball_volume(2, 1.0) == Approx(std::numbers::pi));
  CHECK(ball_volume(3, 1.0) == Approx(4.0 / 3.0 * std::numbers::pi));
  const DensityProbe p = empirical_density_probe(200, 1, 1, 200000, 0.2, 8);
  CHECK(p.estimate == Approx(std::sqrt(3.0 / (2 * std::numbers::pi))).epsilon(0.1));
  CHECK(p.ci.lo <= p.estimate);
  CHECK(p.ci.hi >= p.estimate);
  const DensityProbe q = empirical_density_probe(50, 2, 1, 50000, 0.3, 9);
  CHECK(q.estimate > 0.0);
  CHECK(q.dimension == 2);
}
