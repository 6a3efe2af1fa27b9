#pragma once

#include <vector>

#include "chebyquad/measure.hpp"

namespace chebyquad {

/// Largest order supported in double precision.
inline constexpr int kMaxGaussOrder = 12;

/// Monic three-term recurrence p_{i+1} = (x - a_i) p_i - b_i p_{i-1}.
/// b[0] is the total mass.
struct RecurrenceCoefficients {
  std::vector<double> a;
  std::vector<double> b;
  [[nodiscard]] int order() const { return static_cast<int>(a.size()); }
};

struct GaussRule {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive, summing to the total mass
};

/// Stieltjes procedure with inner products evaluated by quadrature that is
/// exact on polynomial pieces and atoms. Throws ParameterError above
/// kMaxGaussOrder and NumericalError when some b_i (i >= 1) falls below 1e-14.
[[nodiscard]] RecurrenceCoefficients recurrence_from_measure(const Measure1D& m, int order);

/// Golub-Welsch: eigen-decomposition of the m x m Jacobi matrix.
[[nodiscard]] GaussRule gauss_rule(const RecurrenceCoefficients& coeffs, int m);
[[nodiscard]] GaussRule gauss_rule(const Measure1D& measure, int m);

}  // namespace chebyquad
