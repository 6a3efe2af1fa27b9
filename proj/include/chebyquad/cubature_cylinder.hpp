#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "chebyquad/cubature_sphere.hpp"
#include "chebyquad/measure.hpp"
#include "chebyquad/quadrature.hpp"

namespace chebyquad {

/// Curved boundary P_{L,W} = {|x_1| <= L, x_2^2 + ... + x_d^2 = W^2} of a
/// cylinder in R^d, weighted by the axis density v.
struct CylinderSpec {
  int d = 3;
  int k = 1;
  double L = 10.0;
  double W = 1.0;
  double tau = 0.5;
  double delta = 0.1;
};

/// Throws ParameterError unless d >= 3, k >= 1, L > min_L(d), W > 0,
/// 0 < tau < W and 0 < delta < W^k.
void validate(const CylinderSpec& spec);

/// Density of nu_{2L,.}: 1 + (x + 2L)/(4L), rising from 1 at -2L to 2 at 2L.
[[nodiscard]] double axis_density(double L, double x);
/// Integral of the axis density over [a, b].
[[nodiscard]] double axis_mass(double L, double a, double b);
/// Integral of x^r v(x) over [a, b].
[[nodiscard]] double axis_moment(double L, double a, double b, int r);

/// Consecutive intervals from -3L/2, each of v-mass target, while they stay in
/// [-3L/2, 3L/2]. Throws ParameterError ("L too small for tau") unless the
/// last right end exceeds L.
[[nodiscard]] std::vector<Interval> axis_intervals(double L, double target);

struct AxisQuadrature {
  Interval interval;
  int degree = 0;
  std::vector<double> nodes;
  double residual = 0.0;  // normalized residual on the unit interval
  bool success = false;
};

/// Equal-weight nodes for the v-weighted interval, degree max(k, 2).
[[nodiscard]] AxisQuadrature axis_quadrature(Interval interval, double L, int k, long long n0,
                                             Mode mode = Mode::best_effort);

struct CylinderCell {
  Interval axis;        // in the W = 1 frame
  std::size_t box = 0;  // sphere box index
  int q = 0;            // position along the axis for this box
  double mass = 0.0;    // nu_{2L,1}(cell) in the W = 1 frame
  double diameter_bound = 0.0;
  std::vector<double> axis_nodes;
};

struct CylinderOptions {
  std::optional<long long> n1;  // per-factor node count; searched upward when empty
  long long n_max = 4000;
  unsigned threads = 0;
};

/// Built in the W = 1 frame with L/W, tau/W, delta/W^k; points() rescales by W.
struct CylinderCubature {
  CylinderSpec spec;       // as requested
  CylinderSpec unit_spec;  // W = 1 parameters actually constructed
  SphereCubature sphere;   // factor on S^{d-2}
  std::vector<CylinderCell> cells;
  long long n1 = 0;
  int axis_degree = 0;
  double max_axis_residual = 0.0;

  /// n1^{d-1}.
  [[nodiscard]] long long points_per_cell() const;
  /// N x d matrix (axis coordinate first), axis index fastest, scaled by W.
  [[nodiscard]] Eigen::MatrixXd points(std::size_t cell) const;
  /// Same points without the W scaling.
  [[nodiscard]] Eigen::MatrixXd unit_points(std::size_t cell) const;
  /// Cell index containing x (in the scaled frame), or -1.
  [[nodiscard]] long long locate(const Eigen::VectorXd& x) const;
};

/// Sphere partition and cells without node construction; skips the
/// frozen minimum-L check (used when fitting it).
[[nodiscard]] CylinderCubature cylinder_layout(const CylinderSpec& spec);

[[nodiscard]] CylinderCubature cylinder_cubature(const CylinderSpec& spec, CylinderOptions options = {});

}  // namespace chebyquad
