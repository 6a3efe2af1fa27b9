#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "chebyquad/measure.hpp"
#include "chebyquad/momentmap.hpp"

namespace fixture {

/// z separated as the flow requires, and raw target p within the admissible radius.
struct FlowInstance {
  Eigen::VectorXd z;
  Eigen::VectorXd p;
  double rho = 0.0;
};

inline FlowInstance admissible_instance(int k, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FlowInstance in;
  const double margin_factor = 1.0 / (3.0 * (k - 1));
  // span rho plus two margins must fit in [0, 1]
  const double rho_max = 1.0 / (1.0 + 2.0 * margin_factor);
  in.rho = rho_max * (0.3 + 0.65 * u(gen));
  const double margin = in.rho * margin_factor;
  const double gap = in.rho / (k - 1);
  const double slack = 1.0 - 2.0 * margin - gap * (k - 1);
  std::vector<double> cuts(k);
  for (double& c : cuts) c = slack * u(gen);
  std::sort(cuts.begin(), cuts.end());
  in.z.resize(k);
  for (int i = 0; i < k; ++i) in.z(i) = margin + cuts[i] + gap * i;
  const double radius = (in.rho / 3.0) * std::pow(in.rho / (12.0 * std::numbers::e), k - 1);
  in.p = chebyquad::tk(in.z);
  for (int j = 0; j < k; ++j) in.p(j) += radius * (2.0 * u(gen) - 1.0);
  return in;
}

inline chebyquad::Measure1D half_atom_half_uniform(double at = 0.0) {
  return chebyquad::Measure1D({0, 1}, {{at, 0.5}}, {chebyquad::PolynomialPiece{{0, 1}, {0.5, 0, 0, 0}}});
}

inline chebyquad::Measure1D two_atoms() { return chebyquad::Measure1D({0, 1}, {{0.0, 0.5}, {1.0, 0.5}}, {}); }

/// Built-in measures moved to [0, 1] where needed.
inline std::vector<chebyquad::Measure1D> unit_builtins() {
  using namespace chebyquad;
  return {builtin::uniform(),
          affine_rescale(builtin::two_interval_sigma0(), {0, 1}),
          builtin::truncated_exponential_sigma_k(3),
          builtin::truncated_exponential_sigma_k(15),
          builtin::sine_power_weight(2, 1.0, 1.8),
          builtin::linear_density(1.0, 2.0),
          half_atom_half_uniform(),
          half_atom_half_uniform(0.3)};
}

}  // namespace fixture
