#include "chebyquad/orthopoly.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "chebyquad/error.hpp"

namespace chebyquad {

namespace {

struct Discretization {
  std::vector<double> x;
  std::vector<double> w;
};

// Positive weights reproducing integrals of polynomials of degree
// <= 2 * order + 1 against m (exactly on atoms and polynomial pieces).
Discretization discretize(const Measure1D& m, int order) {
  Discretization out;
  for (const Atom& a : m.atoms()) {
    out.x.push_back(a.x);
    out.w.push_back(a.mass);
  }
  const int exact_order = order + 4;
  for (const DensityPiece& piece : m.pieces()) {
    const Interval& iv = piece_interval(piece);
    const bool poly = std::holds_alternative<PolynomialPiece>(piece);
    const int panels = poly ? 1 : 16;
    const int pts = poly ? exact_order : std::max(exact_order, 24);
    const LegendreRule& rule = gauss_legendre(pts);
    const double h = iv.length() / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = iv.lo + p * h;
      const double half = 0.5 * h;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = lo + half * (1.0 + rule.nodes[i]);
        const double w = half * rule.weights[i] * piece_density(piece, x);
        if (w == 0.0) continue;
        out.x.push_back(x);
        out.w.push_back(w);
      }
    }
  }
  return out;
}

}  // namespace

RecurrenceCoefficients recurrence_from_measure(const Measure1D& m, int order) {
  if (order < 1 || order > kMaxGaussOrder)
    throw ParameterError("recurrence_from_measure: order must lie in [1, " +
                         std::to_string(kMaxGaussOrder) + "]");
  const Discretization disc = discretize(m, order);
  const std::size_t n = disc.x.size();
  std::vector<double> p_prev(n, 0.0);
  std::vector<double> p(n, 1.0);
  RecurrenceCoefficients rc;
  double norm_prev = 1.0;
  for (int i = 0; i < order; ++i) {
    double norm = 0.0;
    double xnorm = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const double wp2 = disc.w[s] * p[s] * p[s];
      norm += wp2;
      xnorm += wp2 * disc.x[s];
    }
    const double b = (i == 0) ? norm : norm / norm_prev;
    if (i > 0 && !(b >= 1e-14)) {
      throw NumericalError("recurrence_from_measure: degenerate recurrence (b_" + std::to_string(i) +
                           " below 1e-14); the measure supports at most order " + std::to_string(i));
    }
    const double a = xnorm / norm;
    rc.a.push_back(a);
    rc.b.push_back(b);
    if (i + 1 == order) break;
    const double b_next_prev = (i == 0) ? 0.0 : b;
    for (std::size_t s = 0; s < n; ++s) {
      const double next = (disc.x[s] - a) * p[s] - b_next_prev * p_prev[s];
      p_prev[s] = p[s];
      p[s] = next;
    }
    norm_prev = norm;
  }
  return rc;
}

GaussRule gauss_rule(const RecurrenceCoefficients& coeffs, int m) {
  if (m < 1 || m > coeffs.order()) throw ParameterError("gauss_rule: need 1 <= m <= recurrence order");
  Eigen::VectorXd diag(m);
  Eigen::VectorXd sub(std::max(m - 1, 0));
  for (int i = 0; i < m; ++i) diag(i) = coeffs.a[i];
  for (int i = 1; i < m; ++i) sub(i - 1) = std::sqrt(coeffs.b[i]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("gauss_rule: tridiagonal eigensolver did not converge");
  GaussRule rule;
  for (int i = 0; i < m; ++i) {
    rule.nodes.push_back(solver.eigenvalues()(i));
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights.push_back(coeffs.b[0] * v0 * v0);
  }
  for (int i = 1; i < m; ++i) {
    if (!(rule.nodes[i] > rule.nodes[i - 1]))
      throw NumericalError("gauss_rule: nodes not strictly increasing");
  }
  return rule;
}

GaussRule gauss_rule(const Measure1D& measure, int m) {
  return gauss_rule(recurrence_from_measure(measure, m), m);
}

}  // namespace chebyquad
