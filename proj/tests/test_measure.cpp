#include <cmath>
#include <doctest.h>

#include "chebyquad/error.hpp"
#include "chebyquad/measure.hpp"
#include "chebyquad/measure_io.hpp"
#include "oracles.hpp"

using namespace chebyquad;
using doctest::Approx;

namespace {

Measure1D half_atom_half_uniform() {
  return Measure1D({0, 1}, {{0.0, 0.5}}, {PolynomialPiece{{0, 1}, {0.5, 0, 0, 0}}});
}

Measure1D two_atoms() { return Measure1D({0, 1}, {{0.0, 0.5}, {1.0, 0.5}}, {}); }

std::vector<Measure1D> builtins() {
  return {builtin::uniform(),
          builtin::two_interval_sigma0(),
          builtin::truncated_exponential_sigma_k(3),
          builtin::truncated_exponential_sigma_k(15),
          builtin::sine_power_weight(2, 1.0, 1.8),
          builtin::linear_density(1.0, 2.0),
          half_atom_half_uniform(),
          two_atoms()};
}

}  // namespace

TEST_CASE("parse_measure builtins and explicit parts") {
  const Measure1D u = parse_measure({{"builtin", "uniform"}});
  CHECK(u.pieces().size() == 1);
  CHECK(u.density(0.5) == Approx(1.0));
  CHECK(u.support().lo == 0.0);
  CHECK(u.support().hi == 1.0);

  const Measure1D s0 = parse_measure({{"builtin", "two_interval_sigma0"}});
  CHECK(s0.total_mass() == Approx(1.0).epsilon(1e-12));
  CHECK(s0.support().lo == -1.0);
  CHECK(s0.support().hi == 1.0);
  CHECK(s0.density(0.0) == 0.0);
  CHECK(s0.density(0.49) == 0.0);

  const Measure1D mix = parse_measure(
      nlohmann::json::parse(R"({"support":[0,1],"atoms":[{"x":0,"mass":0.5}],
                                "pieces":[{"interval":[0,1],"coeffs":[0.5,0,0,0]}]})"));
  CHECK(mix.total_mass() == Approx(1.0).epsilon(1e-12));
  CHECK(mix.atom_mass_at(0.0) == 0.5);
}

TEST_CASE("validation names the violated invariant") {
  auto message = [](auto&& make) {
    try {
      make();
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message([] { return Measure1D({0, 1}, {{0.5, 0.6}}, {}); }).find("mass") != std::string::npos);
  CHECK(message([] {
          return Measure1D({0, 1}, {}, {PolynomialPiece{{0, 1}, {-0.5, 3.0, 0, 0}}});
        }).find("negative") != std::string::npos);
  CHECK(message([] {
          return Measure1D({0, 1}, {},
                           {PolynomialPiece{{0, 0.6}, {1, 0, 0, 0}}, PolynomialPiece{{0.4, 1}, {0.4 / 0.6 * 1.0, 0, 0, 0}}});
        }).find("overlap") != std::string::npos);
  CHECK_THROWS_AS((void)parse_measure(nlohmann::json::parse(R"({"builtin":"uniform","atoms":[]})")),
                  ValidationError);
}

TEST_CASE("cdf examples") {
  CHECK(cdf(builtin::uniform(), 0.3) == Approx(0.3));
  CHECK(cdf(half_atom_half_uniform(), 0.0) == Approx(0.5));
  CHECK(cdf(builtin::two_interval_sigma0(), 0.0) == Approx(0.5));
  CHECK(cdf(builtin::uniform(), -1.0) == 0.0);
  CHECK(cdf(builtin::uniform(), 2.0) == 1.0);
}

TEST_CASE("quantile examples") {
  CHECK(quantile(builtin::uniform(), 0.5) == Approx(0.5));
  CHECK(quantile(two_atoms(), 0.5) == 0.0);
  CHECK(quantile(builtin::two_interval_sigma0(), 0.75) == Approx(0.75));
}

TEST_CASE("moment examples") {
  CHECK(moment(builtin::uniform(), 3) == Approx(0.25));
  CHECK(std::abs(moment(builtin::two_interval_sigma0(), 1)) < 1e-15);
  CHECK(moment(builtin::two_interval_sigma0(), 2) == Approx(7.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("inverse_modulus examples") {
  CHECK(inverse_modulus(builtin::uniform(), 0.2) == Approx(0.2).epsilon(1e-12));
  CHECK(inverse_modulus(half_atom_half_uniform(), 0.7) == Approx(0.4).epsilon(1e-12));
  CHECK(inverse_modulus(builtin::two_interval_sigma0(), 0.6) == Approx(1.6).epsilon(1e-12));
  CHECK(inverse_modulus(half_atom_half_uniform(), 0.4) == 0.0);
}

TEST_CASE("truncate_atoms examples") {
  const TruncationResult t = truncate_atoms(half_atom_half_uniform(), 0.2);
  CHECK(t.truncated_mass == Approx(0.7));
  CHECK(t.normalized.atom_mass_at(0.0) == Approx(0.2 / 0.7));
  CHECK(t.normalized.density(0.5) == Approx(0.5 / 0.7));

  const TruncationResult u = truncate_atoms(builtin::uniform(), 0.1);
  CHECK(u.truncated_mass == 1.0);
  CHECK(moment(u.normalized, 2) == Approx(1.0 / 3.0));

  const TruncationResult a = truncate_atoms(two_atoms(), 0.5);
  CHECK(a.truncated_mass == 1.0);
  CHECK(a.normalized.atom_mass_at(1.0) == 0.5);
}

TEST_CASE("affine_rescale examples") {
  const Measure1D u = affine_rescale(builtin::uniform(), {-1, 1});
  CHECK(u.density(0.3) == Approx(0.5));
  CHECK(moment(u, 2) == Approx(1.0 / 3.0));

  const Measure1D dirac = affine_rescale(Measure1D({0, 1}, {{0.5, 1.0}}, {}), {0, 2});
  CHECK(dirac.atom_mass_at(1.0) == 1.0);

  const Measure1D s = affine_rescale(builtin::two_interval_sigma0(), {0, 1});
  CHECK(s.support().lo == 0.0);
  CHECK(s.support().hi == 1.0);
  CHECK(cdf(s, 0.75) - cdf(s, 0.25) == Approx(0.0));

  for (int j = 1; j <= 5; ++j) {
    double expected = 0.0;  // E[((x + 1)/2)^j] expanded binomially
    for (int i = 0; i <= j; ++i)
      expected += std::tgamma(j + 1) / (std::tgamma(i + 1) * std::tgamma(j - i + 1)) *
                  moment(builtin::two_interval_sigma0(), i);
    expected /= std::pow(2.0, j);
    CHECK(moment(s, j) == Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("property: quantile is the left inverse of cdf") {
  for (const Measure1D& m : builtins()) {
    for (int i = 1; i <= 200; ++i) {
      const double p = i / 200.0;
      const double y = quantile(m, p);
      CHECK(cdf(m, y) >= p - 1e-12);
      // at p = 1 the cdf of a fast-decaying tail is 1 to rounding well before the support end
      if (i < 200) CHECK(cdf(m, y - 1e-9) < p);
    }
  }
}

TEST_CASE("property: inverse_modulus matches a grid scan") {
  for (const Measure1D& m : builtins()) {
    for (double delta : {0.05, 0.2, 0.45, 0.7, 0.95}) {
      const double fast = inverse_modulus(m, delta);
      const double slow = oracle::inverse_modulus_grid(m, delta);
      CHECK(std::abs(fast - slow) <= 1e-3);
    }
  }
}

TEST_CASE("property: moments") {
  for (const Measure1D& m : builtins()) CHECK(moment(m, 0) == 1.0);
  for (int j = 0; j <= 20; ++j) CHECK(std::abs(moment(builtin::uniform(), j) - 1.0 / (j + 1)) <= 1e-14);
}

TEST_CASE("property: truncation caps every atom") {
  const Measure1D m({0, 1}, {{0.0, 0.25}, {0.3, 0.5}, {1.0, 0.125}}, {PolynomialPiece{{0, 1}, {0.125, 0, 0, 0}}});
  for (double eps : {0.0625, 0.125, 0.25, 0.5}) {
    const TruncationResult t = truncate_atoms(m, eps);
    CHECK(t.normalized.max_atom_mass() <= eps / t.truncated_mass + 1e-12);
    CHECK(t.normalized.total_mass() == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("property: modulus facts") {
  for (const Measure1D& m : builtins()) {
    double last = 0.0;
    for (int i = 1; i < 20; ++i) {
      const double r = inverse_modulus(m, i / 20.0);
      CHECK(r >= last - 1e-12);
      last = r;
    }
  }
  for (const Measure1D& m : {builtin::uniform(), builtin::truncated_exponential_sigma_k(3),
                             builtin::linear_density(1, 2), half_atom_half_uniform(), two_atoms()}) {
    for (int k = 2; k <= 10; ++k) CHECK(inverse_modulus(m, 1.0 / k) <= 1.0 / k + 1e-12);
  }
  for (const Measure1D& m : {builtin::uniform(), builtin::truncated_exponential_sigma_k(3),
                             builtin::linear_density(1, 2)}) {
    const double M = *m.density_bound();
    for (double delta : {0.1, 0.3, 0.9}) CHECK(inverse_modulus(m, delta) >= delta / M - 1e-12);
  }
}

TEST_CASE("sigma_k moments are the exact exponential ones") {
  const int k = 4;
  const Measure1D m = builtin::truncated_exponential_sigma_k(k);
  const double a = 2.0 * k;
  for (int j = 0; j <= 6; ++j) {
    // int_0^1 x^j e^{-ax} dx / int_0^1 e^{-ax} dx by series
    double num = 0.0, term = 1.0;
    for (int i = 0; i < 200; ++i) {
      if (i > 0) term *= -a / i;
      num += term / (j + i + 1);
    }
    const double den = (1.0 - std::exp(-a)) / a;
    CHECK(moment(m, j) == Approx(num / den).epsilon(1e-12));
  }
}

TEST_CASE("measure JSON round trip") {
  for (const Measure1D& m : builtins()) {
    const Measure1D back = parse_measure(measure_to_json(m));
    for (int j = 0; j <= 6; ++j) CHECK(moment(back, j) == Approx(moment(m, j)).epsilon(1e-12));
  }
}
