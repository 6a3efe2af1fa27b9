#include "chebyquad/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "chebyquad/error.hpp"
#include "double_double.hpp"

namespace chebyquad {

namespace {

constexpr int kMaxFlowDim = 32;
constexpr double kResidualTol = 1e-9;
constexpr double kSupportTol = 1e-12;

using Quad = detail::DD;
template <class T>
using Vec = std::array<T, kMaxFlowDim>;
using QVec = Vec<Quad>;

template <class T>
T tabs(T x) {
  return x < 0 ? -x : x;
}

template <class T>
T max_abs(const Vec<T>& v, int k) {
  T m = 0;
  for (int i = 0; i < k; ++i) m = std::max(m, tabs(v[i]));
  return m;
}

template <class T>
void power_sums(const Vec<T>& w, int k, Vec<T>& out) {
  for (int j = 0; j < k; ++j) out[j] = 0;
  for (int i = 0; i < k; ++i) {
    T p = w[i];
    for (int j = 0; j < k; ++j) {
      out[j] += p;
      p *= w[i];
    }
  }
}

// Solves U(w) x = rhs in place by partial-pivoting elimination.
template <class T>
bool solve_u(const Vec<T>& w, int k, Vec<T>& rhs) {
  std::array<Vec<T>, kMaxFlowDim> a;
  for (int i = 0; i < k; ++i) {
    T p = 1;
    for (int j = 0; j < k; ++j) {
      a[j][i] = T(j + 1) * p;
      p *= w[i];
    }
  }
  T scale = 0;
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) scale = std::max(scale, tabs(a[j][i]));
  for (int c = 0; c < k; ++c) {
    int piv = c;
    for (int r = c + 1; r < k; ++r)
      if (tabs(a[r][c]) > tabs(a[piv][c])) piv = r;
    if (!(tabs(a[piv][c]) > T(1e-30) * scale)) return false;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      std::swap(rhs[piv], rhs[c]);
    }
    for (int r = c + 1; r < k; ++r) {
      const T f = a[r][c] / a[c][c];
      if (f == 0) continue;
      for (int cc = c; cc < k; ++cc) a[r][cc] -= f * a[c][cc];
      rhs[r] -= f * rhs[c];
    }
  }
  for (int r = k - 1; r >= 0; --r) {
    T s = rhs[r];
    for (int cc = r + 1; cc < k; ++cc) s -= a[r][cc] * rhs[cc];
    rhs[r] = s / a[r][r];
  }
  return true;
}

// G(w) = U(w)^{-1} (p - tk(w))
void flow_field(const Vec<double>& w, const Vec<double>& p, int k, Vec<double>& out) {
  Vec<double> t;
  power_sums(w, k, t);
  for (int j = 0; j < k; ++j) out[j] = p[j] - t[j];
  if (!solve_u(w, k, out)) throw NumericalError("perturb_to_moments: singular Jacobian U(w)");
}

// Newton iterations on tk(w) = target; true once the residual is at the
// extended-precision floor. Residuals and updates are extended precision,
// the linear solve is double (iterative refinement).
bool newton_onto(QVec& w, const QVec& target, int k, Quad tol, int max_iter) {
  QVec t;
  Vec<double> dw, r;
  for (int it = 0; it <= max_iter; ++it) {
    power_sums(w, k, t);
    Quad worst = 0;
    for (int j = 0; j < k; ++j) {
      const Quad rj = target[j] - t[j];
      worst = std::max(worst, tabs(rj));
      r[j] = static_cast<double>(rj);
    }
    if (worst <= tol) return true;
    if (it == max_iter) break;
    for (int i = 0; i < k; ++i) dw[i] = static_cast<double>(w[i]);
    if (!solve_u(dw, k, r)) return false;
    for (int i = 0; i < k; ++i) w[i] += r[i];
  }
  return false;
}

struct KahanVec {
  std::vector<double> sum;
  std::vector<double> comp;
  explicit KahanVec(int k) : sum(k, 0.0), comp(k, 0.0) {}
  void add(int j, double v) {
    const double y = v - comp[j];
    const double t = sum[j] + y;
    comp[j] = (t - sum[j]) - y;
    sum[j] = t;
  }
  [[nodiscard]] double value(int j) const { return sum[j] - comp[j]; }
};

void add_powers(KahanVec& acc, double x, double sign, int k) {
  double p = x;
  for (int j = 0; j < k; ++j) {
    acc.add(j, sign * p);
    p *= x;
  }
}

// Damped Newton in double, used only as a best-effort fallback.
std::optional<NodeVector> damped_newton_fallback(const NodeVector& z, const MomentVector& p) {
  NodeVector w = z;
  auto resid = [&](const NodeVector& v) { return (tk(v) - p).cwiseAbs().maxCoeff(); };
  double r = resid(w);
  const double tol = 1e-13 * std::max(1.0, p.cwiseAbs().maxCoeff());
  for (int it = 0; it < 100 && r > tol; ++it) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(u_matrix(w));
    if (!(lu.rcond() > 1e-14)) return std::nullopt;
    const NodeVector step = lu.solve(p - tk(w));
    double lambda = 1.0;
    bool improved = false;
    for (int h = 0; h < 40; ++h, lambda *= 0.5) {
      const NodeVector cand = w + lambda * step;
      const double rc = resid(cand);
      if (rc < r) {
        w = cand;
        r = rc;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (!(r <= tol)) return std::nullopt;
  return w;
}

// Damped minimum-norm Gauss-Newton on all nodes at once, kept inside [0, 1].
// Best-effort only: used when the subset corrections leave a residual.
bool global_polish(std::vector<double>& y, const MomentVector& target) {
  const int k = static_cast<int>(target.size());
  const Eigen::Index n = static_cast<Eigen::Index>(y.size());
  const double dn = static_cast<double>(n);
  auto defect = [&](const std::vector<double>& v) {
    KahanVec acc(k);
    for (double x : v) add_powers(acc, x, 1.0, k);
    MomentVector f(k);
    for (int j = 0; j < k; ++j) f(j) = acc.value(j) / dn - target(j);
    return f;
  };
  MomentVector f = defect(y);
  double r = f.cwiseAbs().maxCoeff();
  for (int it = 0; it < 60 && r > 0.01 * kResidualTol; ++it) {
    Eigen::MatrixXd jac(k, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double p = 1.0;
      for (int j = 0; j < k; ++j) {
        jac(j, i) = (j + 1) * p / dn;
        p *= y[i];
      }
    }
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-f);
    double lambda = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (y[i] + lambda * step(i) < 0.0) lambda = std::min(lambda, 0.9 * y[i] / -step(i));
      if (y[i] + lambda * step(i) > 1.0) lambda = std::min(lambda, 0.9 * (1.0 - y[i]) / step(i));
    }
    bool improved = false;
    std::vector<double> cand(y.size());
    for (int h = 0; h < 30 && lambda > 0.0; ++h, lambda *= 0.5) {
      for (Eigen::Index i = 0; i < n; ++i) cand[i] = y[i] + lambda * step(i);
      const MomentVector fc = defect(cand);
      const double rc = fc.cwiseAbs().maxCoeff();
      if (rc < r) {
        y.swap(cand);
        f = fc;
        r = rc;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return r <= kResidualTol;
}

void check_unit_support(const Measure1D& m, const char* who) {
  if (m.support().lo < -kSupportTol || m.support().hi > 1.0 + kSupportTol)
    throw ParameterError(std::string(who) + ": the measure must be supported in [0, 1]");
}

}  // namespace

const char* to_string(Mode mode) { return mode == Mode::guaranteed ? "guaranteed" : "best_effort"; }

double r_from_rho(double rho, int k) {
  return rho / (6.0 * (k + 3)) * std::pow(rho / (12.0 * std::numbers::e), k - 1);
}

GuaranteeParameters guarantee_parameters(const Measure1D& m, int k) {
  if (k < 2) throw ParameterError("guarantee_parameters: k must be >= 2");
  GuaranteeParameters tp;
  tp.rho = (k - 1) * inverse_modulus(m, 1.0 / (k + 3));
  if (tp.rho > 0.0) {
    tp.r = r_from_rho(tp.rho, k);
    tp.n_required = static_cast<long long>(std::ceil(1.0 / tp.r));
  }
  return tp;
}

std::vector<double> simple_approximation(const Measure1D& m, std::size_t n) {
  if (n < 1) throw ParameterError("simple_approximation: n must be >= 1");
  std::vector<double> y(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 1; i <= n; ++i) y[i - 1] = quantile(m, i == n ? 1.0 : static_cast<double>(i) / dn);
  return y;
}

SubsetSelection select_subsets(std::span<const double> y, int k, double rho, bool check) {
  const std::size_t n = y.size();
  if (k < 2) throw ParameterError("select_subsets: k must be >= 2");
  if (n < static_cast<std::size_t>(k) * (k + 3))
    throw ParameterError("select_subsets: need n >= k(k+3) = " + std::to_string(k * (k + 3)));
  SubsetSelection sel;
  sel.rho = rho;
  sel.i0 = (n + k + 2) / (k + 3);
  if (check && !(rho > 0.0)) {
    throw ConstructionError(
        "select_subsets: rho = 0 (an atom carries mass >= 1/(k+3)), so no separated subsets exist; "
        "use the large-atom construction");
  }
  const double margin = rho / (3.0 * (k - 1));
  const double gap = rho / (k - 1);
  const double tol = 1e-12 * std::max(1.0, rho);
  sel.groups.reserve(sel.i0);
  for (std::size_t r = 1; r <= sel.i0; ++r) {
    std::vector<std::size_t> g(k);
    for (int j = 1; j <= k; ++j) g[j - 1] = j * sel.i0 + r - 2;  // 1-based j*i0 + r - 1
    if (check) {
      for (int j = 0; j < k; ++j) {
        const double z = y[g[j]];
        bool ok = z >= margin - tol && z <= 1.0 - margin + tol;
        if (j > 0) ok = ok && y[g[j]] - y[g[j - 1]] >= gap - tol;
        if (!ok) {
          throw ConstructionError("select_subsets: group " + std::to_string(r) +
                                  " violates the separation condition");
        }
      }
    }
    sel.groups.push_back(std::move(g));
  }
  return sel;
}

SubsetSelection select_subsets(std::span<const double> y, int k, const Measure1D& m) {
  return select_subsets(y, k, (k - 1) * inverse_modulus(m, 1.0 / (k + 3)), true);
}

NodeVector perturb_to_moments(const NodeVector& z, const MomentVector& p, double rho, FlowTrace* trace,
                              FlowOptions options) {
  const int k = static_cast<int>(z.size());
  if (k < 1 || k > kMaxFlowDim) throw ParameterError("perturb_to_moments: need 1 <= k <= 32");
  if (p.size() != k) throw ParameterError("perturb_to_moments: p must have length k");
  QVec qz{};
  QVec qp{};
  for (int i = 0; i < k; ++i) {
    qz[i] = z(i);
    qp[i] = p(i);
  }
  QVec d0;
  power_sums(qz, k, d0);
  for (int j = 0; j < k; ++j) d0[j] -= qp[j];
  const Quad d0_norm = max_abs(d0, k);
  if (trace) {
    *trace = FlowTrace{};
    trace->t.push_back(0.0);
    trace->residual.push_back(static_cast<double>(d0_norm));
    trace->predicted.push_back(static_cast<double>(d0_norm));
  }
  if (d0_norm == 0) return z;

  const double ball = k > 1 ? rho / (3.0 * (k - 1)) : std::numeric_limits<double>::infinity();
  const Quad p_scale = std::max(Quad(1), max_abs(qp, k));
  const Quad corrector_tol = Quad(1e-28) * p_scale * k;
  const double stop = 1e-13 * k;

  QVec w = qz;
  double t = 0.0;
  double h = 0.1;
  long long steps = 0;
  Vec<double> dw, dp, k1, k2, k3, k4, stage;
  QVec target, tw;
  for (int i = 0; i < k; ++i) dp[i] = static_cast<double>(qp[i]);
  while (true) {
    if (steps >= options.max_steps) throw NumericalError("perturb_to_moments: step limit reached");
    // RK4 predictor in double; the corrector restores full accuracy
    for (int i = 0; i < k; ++i) dw[i] = static_cast<double>(w[i]);
    flow_field(dw, dp, k, k1);
    for (int i = 0; i < k; ++i) stage[i] = dw[i] + h / 2 * k1[i];
    flow_field(stage, dp, k, k2);
    for (int i = 0; i < k; ++i) stage[i] = dw[i] + h / 2 * k2[i];
    flow_field(stage, dp, k, k3);
    for (int i = 0; i < k; ++i) stage[i] = dw[i] + h * k3[i];
    flow_field(stage, dp, k, k4);
    QVec pred{};
    for (int i = 0; i < k; ++i) pred[i] = w[i] + Quad(h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]));

    const double t_new = t + h;
    const Quad decay = std::exp(-t_new);
    for (int j = 0; j < k; ++j) target[j] = qp[j] + decay * d0[j];
    power_sums(pred, k, tw);
    Quad pred_err = 0;
    for (int j = 0; j < k; ++j) pred_err = std::max(pred_err, tabs(target[j] - tw[j]));

    QVec corrected = pred;
    if (!newton_onto(corrected, target, k, corrector_tol, 8)) {
      h *= 0.5;
      if (h < 1e-10) throw NumericalError("perturb_to_moments: step size underflow");
      continue;
    }
    w = corrected;
    t = t_new;
    ++steps;

    Quad disp = 0;
    for (int i = 0; i < k; ++i) disp = std::max(disp, tabs(w[i] - qz[i]));
    if (options.enforce_ball && static_cast<double>(disp) > ball + 1e-15) {
      throw DomainError("perturb_to_moments: flow left the ball |w - z| <= rho/(3(k-1))");
    }
    power_sums(w, k, tw);
    Quad resid = 0;
    for (int j = 0; j < k; ++j) resid = std::max(resid, tabs(tw[j] - qp[j]));
    if (trace) {
      trace->t.push_back(t);
      trace->residual.push_back(static_cast<double>(resid));
      trace->predicted.push_back(static_cast<double>(decay * d0_norm));
      trace->max_displacement = std::max(trace->max_displacement, static_cast<double>(disp));
      trace->steps = steps;
    }
    if (static_cast<double>(resid) < stop) break;

    const double rel = static_cast<double>(pred_err / (decay * d0_norm));
    if (rel < 1e-2)
      h = std::min(2.0 * h, 1.0);
    else if (rel > 1e-1)
      h *= 0.5;
  }
  // the remaining e^{-t} tail is a tiny Newton step onto p itself
  if (!newton_onto(w, qp, k, corrector_tol, 8))
    throw NumericalError("perturb_to_moments: final correction did not converge");
  NodeVector out(k);
  for (int i = 0; i < k; ++i) out(i) = static_cast<double>(w[i]);
  return out;
}

MomentVector measure_moments(const Measure1D& m, int k) {
  MomentVector out(k);
  for (int j = 1; j <= k; ++j) out(j - 1) = moment(m, j);
  return out;
}

double normalized_residual(std::span<const double> nodes, const MomentVector& target) {
  const int k = static_cast<int>(target.size());
  KahanVec acc(k);
  for (double x : nodes) add_powers(acc, x, 1.0, k);
  double r = 0.0;
  const double n = static_cast<double>(nodes.size());
  for (int j = 0; j < k; ++j) r = std::max(r, std::abs(acc.value(j) / n - target(j)));
  return r;
}

QuadratureResult construct_quadrature(const Measure1D& m, int k, long long n, std::optional<MomentVector> p,
                                      Mode mode) {
  check_unit_support(m, "construct_quadrature");
  if (k < 2) throw ParameterError("construct_quadrature: k must be >= 2");
  if (k > kMaxFlowDim) throw ParameterError("construct_quadrature: k must be <= 32");
  if (n < static_cast<long long>(k) * (k + 3))
    throw ParameterError("construct_quadrature: n must be >= k(k+3) = " + std::to_string(k * (k + 3)));
  const MomentVector exact = measure_moments(m, k);
  const MomentVector target = p ? *p : exact;
  if (target.size() != k) throw ParameterError("construct_quadrature: target must have length k");

  const GuaranteeParameters tp = guarantee_parameters(m, k);
  const bool guaranteed = mode == Mode::guaranteed;
  if (guaranteed) {
    if (!(tp.rho > 0.0)) {
      throw ConstructionError(
          "construct_quadrature: an atom carries mass >= 1/(k+3) (rho = 0); use the large-atom construction");
    }
    if (n < tp.n_required) {
      throw ParameterError("construct_quadrature: guaranteed mode requires n >= " +
                           std::to_string(tp.n_required) + " (got " + std::to_string(n) + ")");
    }
    for (int j = 0; j < k; ++j) {
      const double slack = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(exact(j)));
      if (std::abs(target(j) - exact(j)) > tp.r * (1.0 + 1e-12) + slack) {
        throw ParameterError("construct_quadrature: target moment " + std::to_string(j + 1) +
                             " is farther than r from the measure's moment");
      }
    }
  }

  QuadratureResult res;
  res.k = k;
  res.target = target;
  res.mode = mode;
  res.diagnostics.rho = tp.rho;
  res.diagnostics.r = tp.r;

  std::vector<double> y = simple_approximation(m, static_cast<std::size_t>(n));
  const SubsetSelection sel = select_subsets(y, k, tp.rho, guaranteed);
  const long long s = static_cast<long long>(sel.groups.size());
  res.diagnostics.subsets_available = s;

  KahanVec sums(k);
  for (double x : y) add_powers(sums, x, 1.0, k);
  const double dn = static_cast<double>(n);
  FlowOptions opts;
  opts.enforce_ball = guaranteed;

  const int max_passes = guaranteed ? 1 : 4;
  NodeVector z(k);
  for (int pass = 0; pass < max_passes; ++pass) {
    res.diagnostics.passes = pass + 1;
    for (long long r = 0; r < s; ++r) {
      const auto& g = sel.groups[r];
      for (int i = 0; i < k; ++i) z(i) = y[g[i]];
      const MomentVector tz = tk(z);
      MomentVector pz(k);
      for (int j = 0; j < k; ++j) pz(j) = tz(j) + (dn * target(j) - sums.value(j)) / static_cast<double>(s - r);
      NodeVector w;
      try {
        FlowTrace trace;
        w = perturb_to_moments(z, pz, tp.rho, &trace, opts);
        res.diagnostics.flow_steps += trace.steps;
      } catch (const Error&) {
        if (guaranteed) throw;
        auto fb = damped_newton_fallback(z, pz);
        if (!fb) {
          ++res.diagnostics.subsets_skipped;
          continue;
        }
        ++res.diagnostics.newton_fallbacks;
        w = *fb;
      }
      ++res.diagnostics.subsets_used;
      for (int i = 0; i < k; ++i) {
        add_powers(sums, y[g[i]], -1.0, k);
        add_powers(sums, w(i), 1.0, k);
        y[g[i]] = w(i);
      }
    }
    if (normalized_residual(y, target) <= 0.1 * kResidualTol) break;
    if (res.diagnostics.subsets_used == 0) break;
  }
  if (!guaranteed && normalized_residual(y, target) > 0.1 * kResidualTol) {
    res.diagnostics.global_polish = true;
    global_polish(y, target);
  }

  std::sort(y.begin(), y.end());
  res.residual = normalized_residual(y, target);
  const bool inside = y.front() >= -kSupportTol && y.back() <= 1.0 + kSupportTol;
  res.success = res.residual <= kResidualTol && inside;
  if (!inside) res.note = "nodes left [0, 1]";
  else if (!res.success) res.note = "residual above 1e-9";
  res.nodes = std::move(y);
  return res;
}

LargeAtomParameters large_atom_parameters(const Measure1D& m, int k, double eps) {
  if (k < 2) throw ParameterError("large_atom_parameters: k must be >= 2");
  const TruncationResult tr = truncate_atoms(m, eps);
  LargeAtomParameters lp;
  lp.truncated_mass = tr.truncated_mass;
  lp.eps_condition = eps / tr.truncated_mass < 2.0 / (2 * k + 7);
  lp.rho = (k - 1) * inverse_modulus(tr.normalized, 2.0 / (2 * k + 7));
  if (lp.rho > 0.0) {
    lp.r = r_from_rho(lp.rho, k);
    lp.n_required = static_cast<long long>(
        std::ceil(std::max(1.0 / (lp.r * tr.truncated_mass), (2.0 * k + 6.0) / eps)));
  }
  return lp;
}

QuadratureResult construct_quadrature_large_atoms(const Measure1D& m, int k, double eps, long long n) {
  check_unit_support(m, "construct_quadrature_large_atoms");
  const LargeAtomParameters lp = large_atom_parameters(m, k, eps);
  if (!lp.eps_condition) {
    if (m.pieces().empty() && static_cast<int>(m.atoms().size()) <= k + 3) {
      throw UnsupportedMeasureError(
          "construct_quadrature_large_atoms: purely atomic measure with at most k+3 atoms; no eps "
          "satisfies eps/truncated_mass < 2/(2k+7)");
    }
    throw ParameterError("construct_quadrature_large_atoms: eps/truncated_mass < 2/(2k+7) fails for this eps");
  }
  if (!(lp.rho > 0.0)) throw ConstructionError("construct_quadrature_large_atoms: rho = 0 for the truncated measure");
  if (n < lp.n_required) {
    throw ParameterError("construct_quadrature_large_atoms: requires n >= " + std::to_string(lp.n_required) +
                         " (got " + std::to_string(n) + ")");
  }

  const double dn = static_cast<double>(n);
  const double threshold = (2.0 * k + 7.0) / (2.0 * k + 6.0) * eps;
  std::vector<Atom> rest_atoms;
  std::vector<std::pair<double, long long>> repeated;
  long long atom_nodes = 0;
  for (const Atom& a : m.atoms()) {
    long long count = 0;
    if (a.mass > threshold) {
      const double x = dn * (a.mass - eps);
      count = static_cast<long long>(std::floor(x + 1e-12 * std::max(1.0, x)));
    }
    if (count > 0) repeated.emplace_back(a.x, count);
    atom_nodes += count;
    const double left = a.mass - static_cast<double>(count) / dn;
    if (left > 0.0) rest_atoms.push_back({a.x, left});
  }
  const long long qn = n - atom_nodes;
  const double q = static_cast<double>(qn) / dn;

  const MomentVector exact = measure_moments(m, k);
  QuadratureResult res;
  if (atom_nodes == 0) {
    res = construct_quadrature(m, k, n, exact, Mode::guaranteed);
  } else {
    for (Atom& a : rest_atoms) a.mass /= q;
    const Measure1D rest(m.support(), std::move(rest_atoms), scale_pieces(m.pieces(), 1.0 / q));
    MomentVector inner(k);
    for (int j = 1; j <= k; ++j) {
      double atom_part = 0.0;
      for (const auto& [x, c] : repeated) atom_part += static_cast<double>(c) / dn * std::pow(x, j);
      inner(j - 1) = (exact(j - 1) - atom_part) / q;
    }
    const QuadratureResult sub = construct_quadrature(rest, k, qn, inner, Mode::guaranteed);
    res.diagnostics = sub.diagnostics;
    res.nodes = sub.nodes;
    for (const auto& [x, c] : repeated) res.nodes.insert(res.nodes.end(), static_cast<std::size_t>(c), x);
    std::sort(res.nodes.begin(), res.nodes.end());
  }
  res.k = k;
  res.target = exact;
  res.mode = Mode::guaranteed;
  res.large_atoms = true;
  res.diagnostics.truncated_mass = lp.truncated_mass;
  res.diagnostics.q = q;
  res.diagnostics.atom_nodes = atom_nodes;
  res.residual = normalized_residual(res.nodes, exact);
  const bool inside = res.nodes.front() >= -kSupportTol && res.nodes.back() <= 1.0 + kSupportTol;
  res.success = res.residual <= kResidualTol && inside &&
                static_cast<long long>(res.nodes.size()) == n;
  if (!res.success) res.note = inside ? "residual above 1e-9" : "nodes left [0, 1]";
  return res;
}

}  // namespace chebyquad
