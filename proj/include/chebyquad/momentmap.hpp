#pragma once

#include <Eigen/Dense>
#include <vector>

namespace chebyquad {

using NodeVector = Eigen::VectorXd;
/// Entry j-1 holds the moment of order j, j = 1..k. Raw sums (tk) or
/// per-node averages (normalized targets) depending on the call site.
using MomentVector = Eigen::VectorXd;

/// Power sums (sum_i z_i^j)_{j=1..k}; k defaults to the number of nodes.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> tk(const Eigen::MatrixBase<Derived>& z,
                                                              Eigen::Index k = -1) {
  using Scalar = typename Derived::Scalar;
  if (k < 0) k = z.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(k);
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    Scalar power = z(i);
    for (Eigen::Index j = 0; j < k; ++j) {
      out(j) += power;
      power *= z(i);
    }
  }
  return out;
}

/// Jacobian of tk: row j (1-based) is j * w_i^{j-1}.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> u_matrix(
    const Eigen::MatrixBase<Derived>& w) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index k = w.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> u(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    Scalar power(1);
    for (Eigen::Index j = 0; j < k; ++j) {
      u(j, i) = Scalar(j + 1) * power;
      power *= w(i);
    }
  }
  return u;
}

/// Vandermonde matrix V(w)_{ji} = w_i^{j}, j = 0..k-1.
[[nodiscard]] Eigen::MatrixXd vandermonde(const NodeVector& w);

/// ||V(w)^{-1}||_inf = max_i prod_{j != i} (1 + w_j) / |w_i - w_j|.
/// Throws DomainError for negative or repeated nodes.
[[nodiscard]] double vandermonde_inverse_norm(const NodeVector& w);

/// (1/k) (4e/sep)^{k-1}.
[[nodiscard]] double u_inverse_norm_bound(int k, double sep);

/// Infinity (max row sum) norm.
template <class Derived>
typename Derived::Scalar inf_norm(const Eigen::MatrixBase<Derived>& a) {
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

/// binom(k + d, d) - 1.
[[nodiscard]] long long moment_dimension(int k, int d);

/// Multi-indices 0 < |alpha| <= k in R^d, graded by |alpha|, then
/// lexicographically descending within a grade: for d = 2, k = 2 the order
/// is (1,0), (0,1), (2,0), (1,1), (0,2). This order is part of the file format.
class MultiIndexBasis {
 public:
  MultiIndexBasis(int k, int d);

  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int d() const { return d_; }
  [[nodiscard]] std::size_t size() const { return indices_.size(); }
  [[nodiscard]] const std::vector<int>& operator[](std::size_t i) const { return indices_[i]; }
  [[nodiscard]] const std::vector<std::vector<int>>& indices() const { return indices_; }

 private:
  int k_;
  int d_;
  std::vector<std::vector<int>> indices_;
};

/// (x^alpha)_alpha in basis order.
[[nodiscard]] Eigen::VectorXd multimoment_map(const Eigen::VectorXd& x, const MultiIndexBasis& basis);
[[nodiscard]] Eigen::VectorXd multimoment_map(const Eigen::VectorXd& x, int k);

}  // namespace chebyquad
