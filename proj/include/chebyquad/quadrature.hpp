#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chebyquad/measure.hpp"
#include "chebyquad/momentmap.hpp"

namespace chebyquad {

enum class Mode { guaranteed, best_effort };

[[nodiscard]] const char* to_string(Mode mode);

/// rho = (k-1) R(1/(k+3)), r = rho/(6(k+3)) (rho/(12e))^{k-1}, n = ceil(1/r).
/// rho = 0 (and n_required = 0) when an atom of mass >= 1/(k+3) exists.
struct GuaranteeParameters {
  double rho = 0.0;
  double r = 0.0;
  long long n_required = 0;
};

[[nodiscard]] double r_from_rho(double rho, int k);
[[nodiscard]] GuaranteeParameters guarantee_parameters(const Measure1D& m, int k);

struct QuadratureDiagnostics {
  double rho = 0.0;
  double r = 0.0;
  long long subsets_available = 0;
  long long subsets_used = 0;
  long long flow_steps = 0;
  long long newton_fallbacks = 0;
  long long subsets_skipped = 0;
  int passes = 0;
  bool global_polish = false;  // best effort: whole-set Gauss-Newton ran
  // large-atom path only
  double truncated_mass = 1.0;
  double q = 1.0;
  long long atom_nodes = 0;
};

struct QuadratureResult {
  std::vector<double> nodes;  // ascending
  int k = 0;
  MomentVector target;        // normalized: target(j-1) ~ (1/n) sum x_i^j
  double residual = 0.0;      // max_j |(1/n) sum x_i^j - target_j|
  Mode mode = Mode::guaranteed;
  bool large_atoms = false;
  bool success = true;
  std::string note;
  QuadratureDiagnostics diagnostics;
};

/// Groups of k indices into a node list; groups are pairwise disjoint.
struct SubsetSelection {
  std::vector<std::vector<std::size_t>> groups;
  double rho = 0.0;
  std::size_t i0 = 0;
};

/// y_i = quantile(m, i/n), i = 1..n.
[[nodiscard]] std::vector<double> simple_approximation(const Measure1D& m, std::size_t n);

/// Group r (1-based) takes the 1-based positions j*i0 + r - 1, j = 1..k, with
/// i0 = ceil(n/(k+3)). When `check` is set every group must satisfy
/// rho/(3(k-1)) <= z_i <= 1 - rho/(3(k-1)) and |z_i - z_j| >= rho/(k-1);
/// a violation throws ConstructionError.
[[nodiscard]] SubsetSelection select_subsets(std::span<const double> y, int k, double rho,
                                             bool check = true);
[[nodiscard]] SubsetSelection select_subsets(std::span<const double> y, int k, const Measure1D& m);

/// Accepted integrator states of the moment flow.
struct FlowTrace {
  std::vector<double> t;
  std::vector<double> residual;   // |tk(w(t)) - p|_inf
  std::vector<double> predicted;  // e^{-t} |tk(z) - p|_inf
  double max_displacement = 0.0;  // max over accepted states of |w - z|_inf
  long long steps = 0;
};

struct FlowOptions {
  bool enforce_ball = true;
  long long max_steps = 10000;
};

/// Follows w' = U(w)^{-1} (p - tk(w)) from w(0) = z to t = infinity, so that
/// tk(w(t)) - p = e^{-t} (tk(z) - p). p holds raw power sums. The state is
/// carried in extended precision; each step is an RK4 predictor followed by a
/// Newton corrector onto the exact decay curve, with an adaptive step.
/// Throws DomainError if w leaves |w - z|_inf <= rho/(3(k-1)) (when enforced)
/// and NumericalError on a singular Jacobian.
[[nodiscard]] NodeVector perturb_to_moments(const NodeVector& z, const MomentVector& p, double rho,
                                            FlowTrace* trace = nullptr, FlowOptions options = {});

/// Normalized moments (1/n sum x_i^j) of m, j = 1..k.
[[nodiscard]] MomentVector measure_moments(const Measure1D& m, int k);

/// Equal-weight n-node rule for m on [0, 1] matching the normalized target p
/// (exact moments of m when p is empty). Guaranteed mode enforces the
/// guarantee's hypotheses and throws ParameterError naming the required n.
[[nodiscard]] QuadratureResult construct_quadrature(const Measure1D& m, int k, long long n,
                                                    std::optional<MomentVector> p, Mode mode);

struct LargeAtomParameters {
  double truncated_mass = 1.0;
  bool eps_condition = false;  // eps / truncated_mass < 2/(2k+7)
  double rho = 0.0;            // (k-1) R_{sigma'_eps}(2/(2k+7))
  double r = 0.0;
  long long n_required = 0;    // ceil(max(1/(r truncated_mass), (2k+6)/eps))
};

[[nodiscard]] LargeAtomParameters large_atom_parameters(const Measure1D& m, int k, double eps);

/// Decomposes m = q sigma'_{1,n} + sigma_{2,n}: atoms of mass above
/// (2k+7)/(2k+6) eps keep floor(n (mass - eps))/n as repeated nodes, and the
/// remainder gets q n constructed nodes.
[[nodiscard]] QuadratureResult construct_quadrature_large_atoms(const Measure1D& m, int k, double eps,
                                                                long long n);

/// Normalized residual max_j |(1/n) sum x_i^j - target_j| with compensated sums.
[[nodiscard]] double normalized_residual(std::span<const double> nodes, const MomentVector& target);

}  // namespace chebyquad
