#pragma once

#include <optional>
#include <span>
#include <string>

#include "chebyquad/measure.hpp"

namespace chebyquad {

struct UpperBoundReport {
  int k = 0;
  double rho = 0.0;
  double r = 0.0;
  long long n_guaranteed = 0;           // ceil(1/r); 0 when rho = 0
  std::optional<double> density_sup;    // M
  std::optional<double> density_bound;  // ceil(75 e^4 k M (12 e M)^{k-1})
  std::optional<double> beta_bound;     // ceil(1/r) with R(delta) >= c delta^beta
  bool large_atom_referral = false;
  std::string note;
};

/// Lower bounds on the minimal node count for degree k.
struct LowerBoundReport {
  int k = 0;
  std::optional<double> moment_bound;     // odd k >= 3 (k - 1 is used for even k)
  std::optional<double> bernstein_bound;  // Gaussian order m = (k + 1) / 2
  std::optional<int> m;
  std::string note;
};

struct PowerLawModulus {
  double c = 0.0;     // R(delta) >= c delta^beta
  double beta = 1.0;
};

[[nodiscard]] UpperBoundReport upper_bound(const Measure1D& m, int k,
                                           std::optional<PowerLawModulus> modulus = std::nullopt);

/// ceil(75 e^4 k M (12 e M)^{k-1}).
[[nodiscard]] double density_upper_bound(int k, double M);

/// max(1, m_k^{k-1} / m_{k-1}^k) for odd k >= 3, after reflecting x -> -x
/// when m_k < 0; 1 when m_k = 0.
[[nodiscard]] double lower_bound_moments(const Measure1D& m, int k);

struct TranslatedBound {
  double bound = 1.0;
  double shift = 0.0;
};

/// Largest lower_bound_moments over the measure translated by each shift.
[[nodiscard]] TranslatedBound lower_bound_moments_translated(const Measure1D& m, int k,
                                                             std::span<const double> shifts);

/// 1 / min(lambda_1, lambda_m) for the m-point Gaussian rule of the measure.
[[nodiscard]] double lower_bound_bernstein(const Measure1D& m, int mth);

[[nodiscard]] LowerBoundReport lower_bound(const Measure1D& m, int k);

struct GaussianWeightCheck {
  bool holds = false;
  double lambda1 = 0.0;  // first Gaussian weight
  double rhs = 0.0;      // 1 / ceil(75 e^4 (2m-1) M (12 e M)^{2m-2})
};

/// Both sides of lambda_1 >= 1/ceil(75 e^4 (2m-1) M (12 e M)^{2m-2}); M defaults
/// to the measure's density bound.
[[nodiscard]] GaussianWeightCheck gaussian_weight_check(const Measure1D& m, int mth,
                                                        std::optional<double> M = std::nullopt);

}  // namespace chebyquad
