#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chebyquad/cubature_cylinder.hpp"
#include "chebyquad/cubature_sphere.hpp"
#include "chebyquad/measure.hpp"
#include "chebyquad/momentmap.hpp"
#include "chebyquad/random_cubature.hpp"

namespace chebyquad {

/// 64-bit FNV-1a.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes);
[[nodiscard]] std::string hex64(std::uint64_t h);
/// Hash of the node list as written to a node file (one %.17g per line).
[[nodiscard]] std::string hash_nodes(std::span<const double> nodes);
/// Hash of the measure's canonical JSON form.
[[nodiscard]] std::string hash_measure(const Measure1D& m);

struct ResidualReport {
  int k = 0;
  long long n = 0;
  std::vector<double> per_degree;  // j = 1..k
  double max = 0.0;
  std::string nodes_hash;
  std::string measure_hash;
};

/// |(1/n) sum x_i^j - moment(m, j)| with compensated sums.
[[nodiscard]] ResidualReport moment_residual(std::span<const double> nodes, const Measure1D& m, int k);

/// Damped Newton on T_k(w) = p from z with step halving. Throws
/// NumericalError after 100 iterations without convergence.
[[nodiscard]] NodeVector newton_oracle(const NodeVector& z, const MomentVector& p);

/// g(z) = (z - shift)^alpha; a zero shift gives the plain monomial.
struct ShiftedMonomial {
  std::vector<int> alpha;
  Eigen::VectorXd shift;

  [[nodiscard]] double operator()(const Eigen::Ref<const Eigen::VectorXd>& z) const;
  [[nodiscard]] int degree() const;
};

[[nodiscard]] ShiftedMonomial plain_monomial(std::vector<int> alpha);

struct ReferenceValue {
  double value = 0.0;           // at the finer resolution
  double error_estimate = 0.0;  // difference between the two resolutions
};

/// Average of g over the image of the box, (1/mass) int_E g d sigma, by
/// product Gauss-Legendre with `resolution` and 2 * resolution points per
/// angle. Throws NumericalError when the estimate exceeds tolerance.
[[nodiscard]] ReferenceValue reference_average(const AngleBox& box, const ShiftedMonomial& g, int resolution = 16,
                                               double tolerance = 1e-10);
/// Unnormalized integral int_E g d sigma.
[[nodiscard]] ReferenceValue reference_integral(const AngleBox& box, const ShiftedMonomial& g, int resolution = 16,
                                                double tolerance = 1e-10);
/// Average of g over a cylinder cell (W = 1 frame) against nu_{2L,1}.
[[nodiscard]] ReferenceValue reference_average(const CylinderCubature& cyl, std::size_t cell,
                                               const ShiftedMonomial& g, int resolution = 16,
                                               double tolerance = 1e-10);

/// Largest error of the sine-weight estimate over k1 + k2 <= k.
[[nodiscard]] double sine_estimate_error(const SineQuadrature& s, int k);

/// Uniform point of S^{dim-1} in R^dim.
[[nodiscard]] Eigen::VectorXd random_unit_vector(int dim, Philox4x32& rng);

struct CubatureCheck {
  double delta = 0.0;
  double max_monomial_error = 0.0;
  double max_shifted_error = 0.0;
  double max_reference_error = 0.0;
  long long worst_region = -1;
  long long regions = 0;
  int monomials = 0;
  int shifted = 0;
  bool passed = false;
};

/// Every box: all monomials |alpha| <= k and `shifts` random shifted monomials
/// (z - w)^alpha with w on the sphere and 1 <= |alpha| <= k.
[[nodiscard]] CubatureCheck verify_sphere(const SphereCubature& cub, double delta, int shifts = 20,
                                          std::uint64_t seed = 1, unsigned threads = 0);

/// Same on cylinder cells (W = 1 frame), shifts y in P_{2L,1}.
[[nodiscard]] CubatureCheck verify_cylinder(const CylinderCubature& cyl, int shifts = 20, std::uint64_t seed = 1,
                                            unsigned threads = 0);

struct CoverageCheck {
  long long samples = 0;
  long long exactly_one = 0;
  long long uncovered = 0;
  long long multiple = 0;
};

/// Uniform samples of P_{L,W} (scaled frame) and how many cells contain each.
[[nodiscard]] CoverageCheck cylinder_coverage(const CylinderCubature& cyl, long long samples = 1000,
                                              std::uint64_t seed = 1);

}  // namespace chebyquad
