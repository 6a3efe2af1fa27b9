#include <cmath>
#include <limits>
#include <doctest.h>
#include <numbers>

#include "chebyquad/bounds.hpp"
#include "chebyquad/error.hpp"
#include "chebyquad/quadrature.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace chebyquad;
using doctest::Approx;

namespace {
constexpr double e = std::numbers::e;
}

TEST_CASE("upper_bound examples") {
  const UpperBoundReport u = upper_bound(builtin::uniform(), 2);
  CHECK(u.rho == Approx(0.2).epsilon(1e-12));
  CHECK(u.r == Approx(4.0875e-5).epsilon(1e-4));
  CHECK(u.n_guaranteed == static_cast<long long>(std::ceil(1.0 / ((0.2 / 30) * (0.2 / (12 * e))))));
  REQUIRE(u.density_bound.has_value());
  CHECK(*u.density_bound == std::ceil(75 * std::pow(e, 4) * 2 * (12 * e)));

  const UpperBoundReport a = upper_bound(fixture::half_atom_half_uniform(), 2);
  CHECK(a.rho == 0.0);
  CHECK(a.large_atom_referral);
  CHECK(a.n_guaranteed == 0);
}

TEST_CASE("upper_bound with a power-law modulus") {
  // uniform: R(delta) = delta, so c = 1, beta = 1 reproduces the rho/r pipeline
  const UpperBoundReport u = upper_bound(builtin::uniform(), 3, PowerLawModulus{1.0, 1.0});
  REQUIRE(u.beta_bound.has_value());
  CHECK(std::abs(*u.beta_bound - static_cast<double>(u.n_guaranteed)) <= 1.0);
  const UpperBoundReport loose = upper_bound(builtin::uniform(), 3, PowerLawModulus{0.5, 1.0});
  CHECK(*loose.beta_bound > *u.beta_bound);
}

TEST_CASE("lower_bound_moments examples") {
  // 1/3 is not representable, so 27/16 is reached to a few ulps
  CHECK(std::abs(lower_bound_moments(builtin::uniform(), 3) - 27.0 / 16.0) <= 4 * std::numeric_limits<double>::epsilon());
  CHECK(lower_bound_moments(builtin::uniform(-1, 1), 3) == 1.0);
  CHECK_THROWS_AS((void)lower_bound_moments(builtin::uniform(), 4), ParameterError);
  CHECK_THROWS_AS((void)lower_bound_moments(builtin::uniform(), 1), ParameterError);
  CHECK_THROWS_AS((void)lower_bound_moments(Measure1D({0, 1}, {{0.0, 1.0}}, {}), 3), DomainError);

  const double b15 = lower_bound_moments(builtin::truncated_exponential_sigma_k(15), 15);
  CHECK(b15 >= std::pow(e / 2, 15) / (2 * std::sqrt(15.0)));
}

TEST_CASE("lower_bound_bernstein examples") {
  CHECK(lower_bound_bernstein(builtin::uniform(), 2) == Approx(2.0).epsilon(1e-10));
  CHECK(lower_bound_bernstein(builtin::uniform(), 3) == Approx(3.6).epsilon(1e-10));
  CHECK(lower_bound_bernstein(fixture::two_atoms(), 2) == Approx(2.0).epsilon(1e-10));
  CHECK_THROWS_AS((void)lower_bound_bernstein(fixture::two_atoms(), 3), DomainError);
}

TEST_CASE("gaussian_weight_check examples") {
  const GaussianWeightCheck g2 = gaussian_weight_check(builtin::uniform(), 2);
  CHECK(g2.lambda1 == Approx(0.5));
  CHECK(g2.rhs == 1.0 / std::ceil(75 * std::pow(e, 4) * 3 * std::pow(12 * e, 2)));
  CHECK(g2.holds);
  const GaussianWeightCheck g1 = gaussian_weight_check(builtin::uniform(), 1);
  CHECK(g1.lambda1 == Approx(1.0));
  CHECK(g1.holds);
}

TEST_CASE("property: lower_bound_moments is reflection invariant") {
  for (const Measure1D& m : fixture::unit_builtins()) {
    for (int k : {3, 5, 7})
      CHECK(lower_bound_moments(m, k) == Approx(lower_bound_moments(reflect(m), k)).epsilon(1e-12));
  }
}

TEST_CASE("property: bounds are at least one") {
  for (const Measure1D& m : fixture::unit_builtins()) {
    for (int k : {3, 5}) {
      const LowerBoundReport r = lower_bound(m, k);
      if (r.moment_bound) CHECK(*r.moment_bound >= 1.0);
      if (r.bernstein_bound) CHECK(*r.bernstein_bound >= 1.0);
    }
  }
}

TEST_CASE("property: Gaussian-weight inequality on density-bounded builtins") {
  for (const Measure1D& m : {builtin::uniform(), builtin::truncated_exponential_sigma_k(3),
                             builtin::linear_density(1, 2), builtin::sine_power_weight(2, 1.0, 1.8)}) {
    for (int mth = 1; mth <= 5; ++mth) CHECK(gaussian_weight_check(m, mth).holds);
  }
}

TEST_CASE("property: sandwich for uniform k = 3, 5, 7") {
  for (int k : {3, 5, 7}) {
    const double lo = lower_bound_moments(builtin::uniform(), k);
    const double bern = lower_bound_bernstein(builtin::uniform(), (k + 1) / 2);
    const UpperBoundReport up = upper_bound(builtin::uniform(), k);
    CHECK(lo <= bern);
    CHECK(bern <= static_cast<double>(up.n_guaranteed));
  }
}

TEST_CASE("property: the guaranteed count works when fed back") {
  for (const Measure1D& m : {builtin::uniform(), builtin::linear_density(1, 2)}) {
    const UpperBoundReport up = upper_bound(m, 2);
    const QuadratureResult q = construct_quadrature(m, 2, up.n_guaranteed, std::nullopt, Mode::guaranteed);
    CHECK(q.residual <= 1e-9);
  }
}

TEST_CASE("translation scan is opt-in and never lowers the bound") {
  const Measure1D m = builtin::uniform();
  const std::vector<double> shifts{0.0, 0.25, 0.5, 1.0};
  const TranslatedBound t = lower_bound_moments_translated(m, 3, shifts);
  CHECK(t.bound >= lower_bound_moments(m, 3));
}
