#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "chebyquad/measure.hpp"
#include "chebyquad/quadrature.hpp"

namespace chebyquad {

/// Box in spherical coordinates: sides[0] is the phi interval in [0, 2 pi],
/// sides[q] (q >= 1) the theta_q interval in [0, pi], carrying weight sin^q.
struct AngleBox {
  std::vector<Interval> sides;
  double mass = 0.0;            // mu_d(box) = sigma_d(T(box))
  double diameter_bound = 0.0;  // rigorous upper bound on diam T(box)
  double diameter_sampled = 0.0;

  [[nodiscard]] int d() const { return static_cast<int>(sides.size()); }
  [[nodiscard]] bool contains(std::span<const double> ang, double tol = 0.0) const;
};

struct SpherePartition {
  int d = 0;
  double tau = 0.0;
  std::vector<AngleBox> boxes;

  [[nodiscard]] double total_mass() const;
  /// Index of a box containing the angles, or -1.
  [[nodiscard]] long long locate(std::span<const double> ang) const;
};

/// Smallest m >= 1 with (k e/(m+1))^{m+1} <= delta/(2 d 2^k).
[[nodiscard]] int m0(int d, int k, double delta);
/// Smallest m >= 1 with (k e/(m+1))^{m+1} <= gamma/2.
[[nodiscard]] int sine_degree(int k, double gamma);

/// Surface area of the unit sphere S^d.
[[nodiscard]] double sphere_area(int d);

/// T(phi, theta_1, ..., theta_{d-1}) in R^{d+1}; T(ang, theta) = (sin theta T(ang), cos theta).
[[nodiscard]] Eigen::VectorXd spherical_map(std::span<const double> ang);
/// Angles of a nonzero vector of R^{d+1}, phi in [0, 2 pi).
[[nodiscard]] std::vector<double> inverse_spherical_map(const Eigen::VectorXd& x);

/// Recursive partition into boxes with side lengths below 1 (see README).
[[nodiscard]] SpherePartition partition_sphere(int d, double tau);

/// Exact mass of a box: |J| * prod_q int_{I_q} sin^q.
[[nodiscard]] double box_mass(std::span<const Interval> sides);
/// sqrt((2 sin(|I|/2))^2 + max_I sin^2 * D'^2) applied recursively.
[[nodiscard]] double box_diameter_bound(std::span<const Interval> sides);

struct CertificateCheck {
  bool holds = true;
  double max_diameter_ratio = 0.0;  // max diam / tau
  double min_mass_ratio = 0.0;      // min mass / tau^d
  double count_ratio = 0.0;         // K tau^d
};

[[nodiscard]] CertificateCheck check_certificates(const SpherePartition& p, double C, double c);

struct SineQuadrature {
  int q = 0;
  Interval interval;
  int degree = 0;
  std::vector<double> nodes;  // angles inside interval
  double residual = 0.0;      // normalized moment residual on [0, 1]
  bool success = false;
};

/// Equal-weight nodes for sin^q on `interval` matching moments up to the
/// degree chosen from gamma, with n nodes.
[[nodiscard]] SineQuadrature sine_weight_quadrature(int q, Interval interval, int k, double gamma,
                                                    long long n, Mode mode = Mode::best_effort);

struct SphereOptions {
  std::optional<long long> n;  // nodes per factor; searched upward when empty
  long long n_max = 4000;
  unsigned threads = 0;
};

/// Local approximate cubature. Each box holds d factor node lists of a common
/// length n; the box's points are their Cartesian product through T.
struct SphereCubature {
  SpherePartition partition;
  int k = 0;
  double delta = 0.0;
  double gamma = 0.0;
  int degree = 0;
  long long n = 0;
  std::vector<std::vector<std::vector<double>>> factors;  // [box][q]
  double max_factor_residual = 0.0;

  [[nodiscard]] long long points_per_box() const;
  /// N x (d+1) matrix of the box's points (row-major product order, phi fastest).
  [[nodiscard]] Eigen::MatrixXd points(std::size_t box) const;
};

[[nodiscard]] SphereCubature sphere_cubature(int d, int k, double tau, double delta, SphereOptions options = {});

/// Factor nodes for all distinct (q, interval) pairs of a partition at a
/// common n, or nullopt if any factor fails.
[[nodiscard]] std::optional<SphereCubature> sphere_cubature_at(const SpherePartition& partition, int k,
                                                               double delta, long long n, unsigned threads);

}  // namespace chebyquad
