#include "chebyquad/momentmap.hpp"

#include <cmath>
#include <numbers>

#include "chebyquad/error.hpp"

namespace chebyquad {

Eigen::MatrixXd vandermonde(const NodeVector& w) {
  const Eigen::Index k = w.size();
  Eigen::MatrixXd v(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    double power = 1.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      v(j, i) = power;
      power *= w(i);
    }
  }
  return v;
}

double vandermonde_inverse_norm(const NodeVector& w) {
  const Eigen::Index k = w.size();
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(w(i) >= 0.0)) throw DomainError("vandermonde_inverse_norm: nodes must be >= 0");
  }
  double best = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    double prod = 1.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (j == i) continue;
      const double gap = std::abs(w(i) - w(j));
      if (gap == 0.0) throw DomainError("vandermonde_inverse_norm: nodes must be distinct");
      prod *= (1.0 + w(j)) / gap;
    }
    best = std::max(best, prod);
  }
  return best;
}

double u_inverse_norm_bound(int k, double sep) {
  if (k < 1 || !(sep > 0.0 && sep <= 1.0))
    throw ParameterError("u_inverse_norm_bound: need k >= 1 and 0 < sep <= 1");
  return std::pow(4.0 * std::numbers::e / sep, k - 1) / k;
}

long long moment_dimension(int k, int d) {
  if (k < 0 || d < 1) throw ParameterError("moment_dimension: need k >= 0 and d >= 1");
  long long c = 1;
  for (int i = 1; i <= d; ++i) c = c * (k + i) / i;
  return c - 1;
}

namespace {

void append_grade(int remaining, int pos, std::vector<int>& alpha, std::vector<std::vector<int>>& out) {
  const int d = static_cast<int>(alpha.size());
  if (pos == d - 1) {
    alpha[pos] = remaining;
    out.push_back(alpha);
    return;
  }
  for (int a = remaining; a >= 0; --a) {
    alpha[pos] = a;
    append_grade(remaining - a, pos + 1, alpha, out);
  }
}

}  // namespace

MultiIndexBasis::MultiIndexBasis(int k, int d) : k_(k), d_(d) {
  if (k < 1 || d < 1) throw ParameterError("MultiIndexBasis: need k >= 1 and d >= 1");
  std::vector<int> alpha(d, 0);
  for (int g = 1; g <= k; ++g) append_grade(g, 0, alpha, indices_);
}

Eigen::VectorXd multimoment_map(const Eigen::VectorXd& x, const MultiIndexBasis& basis) {
  if (x.size() != basis.d()) throw ParameterError("multimoment_map: dimension mismatch");
  // powers(i, e) = x_i^e
  Eigen::MatrixXd powers(basis.d(), basis.k() + 1);
  for (int i = 0; i < basis.d(); ++i) {
    powers(i, 0) = 1.0;
    for (int e = 1; e <= basis.k(); ++e) powers(i, e) = powers(i, e - 1) * x(i);
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    double v = 1.0;
    for (int i = 0; i < basis.d(); ++i) v *= powers(i, basis[a][i]);
    out(static_cast<Eigen::Index>(a)) = v;
  }
  return out;
}

Eigen::VectorXd multimoment_map(const Eigen::VectorXd& x, int k) {
  return multimoment_map(x, MultiIndexBasis(k, static_cast<int>(x.size())));
}

}  // namespace chebyquad
