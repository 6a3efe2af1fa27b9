#pragma once

#include <span>
#include <vector>

namespace chebyquad {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
struct LegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rules are computed once per order and cached; safe for concurrent use.
const LegendreRule& gauss_legendre(int order);

/// Integrate f over [lo, hi] with a fixed-order Gauss-Legendre rule.
template <class F>
double integrate_gl(F&& f, double lo, double hi, int order) {
  const LegendreRule& rule = gauss_legendre(order);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

/// Composite rule: `panels` equal subintervals, each with `order` points.
template <class F>
double integrate_gl_composite(F&& f, double lo, double hi, int order, int panels) {
  double sum = 0.0;
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p)
    sum += integrate_gl(f, lo + p * h, (p + 1 == panels) ? hi : lo + (p + 1) * h, order);
  return sum;
}

}  // namespace chebyquad
