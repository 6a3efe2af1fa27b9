#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <numbers>
#include <random>

#include "chebyquad/error.hpp"
#include "chebyquad/momentmap.hpp"
#include "oracles.hpp"

using namespace chebyquad;
using doctest::Approx;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// k nodes in [0,1] with consecutive gaps >= gap
Eigen::VectorXd separated_nodes(int k, double gap, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double slack = 1.0 - gap * (k - 1);
  std::vector<double> cuts(k);
  for (double& c : cuts) c = slack * u(gen);
  std::sort(cuts.begin(), cuts.end());
  Eigen::VectorXd w(k);
  for (int i = 0; i < k; ++i) w(i) = cuts[i] + gap * i;
  return w;
}

}  // namespace

TEST_CASE("tk examples") {
  CHECK(tk(vec({0, 1})).isApprox(vec({1, 1})));
  CHECK(tk(vec({0.25, 0.75})).isApprox(vec({1, 5.0 / 8.0})));
  const double c = 0.3;
  const Eigen::VectorXd t = tk(vec({c, c, c}));
  for (int j = 1; j <= 3; ++j) CHECK(t(j - 1) == Approx(3 * std::pow(c, j)));
}

TEST_CASE("u_matrix examples") {
  Eigen::MatrixXd expected(2, 2);
  expected << 1, 1, 2 * 0.2, 2 * 0.7;
  CHECK(u_matrix(vec({0.2, 0.7})).isApprox(expected));
  expected << 1, 1, 0, 2;
  CHECK(u_matrix(vec({0, 1})).isApprox(expected));

  const Eigen::VectorXd w = vec({0.2, 0.7, 0.9});
  const Eigen::MatrixXd u = u_matrix(w);
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    Eigen::VectorXd plus = w, minus = w;
    plus(i) += h;
    minus(i) -= h;
    const Eigen::VectorXd col = (tk(plus) - tk(minus)) / (2 * h);
    for (int j = 0; j < 3; ++j) CHECK(col(j) == Approx(u(j, i)).epsilon(1e-6));
  }
}

TEST_CASE("vandermonde_inverse_norm examples") {
  CHECK(vandermonde_inverse_norm(vec({0, 1})) == Approx(2.0));
  CHECK(vandermonde_inverse_norm(vec({0, 0.5, 1})) == Approx(8.0));
  CHECK(vandermonde_inverse_norm(vec({0.37})) == 1.0);
  CHECK_THROWS_AS((void)vandermonde_inverse_norm(vec({0.2, 0.2})), DomainError);
  CHECK_THROWS_AS((void)vandermonde_inverse_norm(vec({-0.1, 0.2})), DomainError);
}

TEST_CASE("u_inverse_norm_bound examples") {
  CHECK(u_inverse_norm_bound(1, 0.3) == 1.0);
  CHECK(u_inverse_norm_bound(2, 1.0) == Approx(0.5 * 4 * std::numbers::e));
}

TEST_CASE("multimoment_map examples") {
  CHECK(multimoment_map(vec({2, 3}), 2).isApprox(vec({2, 3, 4, 6, 9})));
  const double t = 0.7;
  CHECK(multimoment_map(vec({t}), 3).isApprox(vec({t, t * t, t * t * t})));
  CHECK(moment_dimension(2, 2) == 5);
  CHECK(moment_dimension(3, 1) == 3);
  const MultiIndexBasis b(2, 2);
  CHECK(b[0] == std::vector<int>{1, 0});
  CHECK(b[1] == std::vector<int>{0, 1});
  CHECK(b[2] == std::vector<int>{2, 0});
  CHECK(b[3] == std::vector<int>{1, 1});
  CHECK(b[4] == std::vector<int>{0, 2});
}

TEST_CASE("property: tk is permutation invariant") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + trial % 8;
    Eigen::VectorXd z(k);
    for (int i = 0; i < k; ++i) z(i) = u(gen);
    std::vector<double> perm(z.data(), z.data() + k);
    std::shuffle(perm.begin(), perm.end(), gen);
    const Eigen::VectorXd zp = Eigen::Map<Eigen::VectorXd>(perm.data(), k);
    CHECK((tk(z) - tk(zp)).cwiseAbs().maxCoeff() <= 1e-14 * k);
  }
}

TEST_CASE("property: u_matrix is the Jacobian of tk") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 1; k <= 8; ++k) {
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd w(k);
      for (int i = 0; i < k; ++i) w(i) = u(gen);
      const Eigen::MatrixXd jac = u_matrix(w);
      const double h = 1e-6;
      for (int i = 0; i < k; ++i) {
        Eigen::VectorXd plus = w, minus = w;
        plus(i) += h;
        minus(i) -= h;
        const Eigen::VectorXd col = (tk(plus) - tk(minus)) / (2 * h);
        for (int j = 0; j < k; ++j)
          CHECK(std::abs(col(j) - jac(j, i)) <= 1e-6 * std::max(1.0, std::abs(jac(j, i))));
      }
    }
  }
}

TEST_CASE("property: Gautschi formula equals direct inversion") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + trial % 6;
    const Eigen::VectorXd w = separated_nodes(k, 0.05, gen);
    const double formula = vandermonde_inverse_norm(w);
    const double direct = oracle::vandermonde_inverse_direct(w);
    CHECK(std::abs(formula - direct) <= 1e-8 * direct);
  }
}

TEST_CASE("property: U inverse bound dominates") {
  std::mt19937_64 gen(14);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + trial % 5;
    const double sep = u(gen);
    const Eigen::VectorXd w = separated_nodes(k, sep / (k - 1), gen);
    CHECK(oracle::u_inverse_direct(w) <= u_inverse_norm_bound(k, sep) * (1 + 1e-12));
  }
}

TEST_CASE("property: multimoment_map length") {
  for (int k = 1; k <= 6; ++k) {
    for (int d = 1; d <= 6; ++d) {
      long long binom = 1;
      for (int i = 1; i <= d; ++i) binom = binom * (k + i) / i;
      CHECK(moment_dimension(k, d) == binom - 1);
      CHECK(multimoment_map(Eigen::VectorXd::Constant(d, 0.5), k).size() == binom - 1);
      CHECK(MultiIndexBasis(k, d).size() == static_cast<std::size_t>(binom - 1));
    }
  }
}
