#include "chebyquad/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "chebyquad/error.hpp"
#include "chebyquad/gauss_legendre.hpp"
#include "chebyquad/measure_io.hpp"
#include "chebyquad/parallel.hpp"
#include "json.hpp"

namespace chebyquad {

namespace {

struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Product Gauss-Legendre over a box; f receives the coordinates.
template <class F>
double product_gl(const std::vector<Interval>& sides, int order, F&& f) {
  const LegendreRule& rule = gauss_legendre(order);
  const int dim = static_cast<int>(sides.size());
  long long total = 1;
  for (int i = 0; i < dim; ++i) total *= order;
  std::vector<double> x(dim);
  Kahan acc;
  for (long long idx = 0; idx < total; ++idx) {
    long long rem = idx;
    double w = 1.0;
    for (int i = 0; i < dim; ++i) {
      const int j = static_cast<int>(rem % order);
      rem /= order;
      const double half = 0.5 * sides[i].length();
      x[i] = sides[i].lo + half * (rule.nodes[j] + 1.0);
      w *= half * rule.weights[j];
    }
    acc.add(w * f(x));
  }
  return acc.sum;
}

template <class F>
ReferenceValue two_resolution(const std::vector<Interval>& sides, int resolution, double tolerance, double scale,
                              F&& f) {
  if (resolution < 16) throw ParameterError("reference integration: resolution must be >= 16");
  const double coarse = product_gl(sides, resolution, f) / scale;
  const double fine = product_gl(sides, 2 * resolution, f) / scale;
  ReferenceValue out{fine, std::abs(fine - coarse)};
  if (out.error_estimate > tolerance) {
    throw NumericalError("reference integration: error estimate " + std::to_string(out.error_estimate) +
                         " above tolerance");
  }
  return out;
}

double sine_weight(const std::vector<double>& ang) {
  double w = 1.0;
  for (std::size_t q = 1; q < ang.size(); ++q) w *= std::pow(std::sin(ang[q]), static_cast<double>(q));
  return w;
}

std::vector<ShiftedMonomial> monomials(int k, int dim) {
  std::vector<ShiftedMonomial> out;
  const MultiIndexBasis basis(k, dim);
  for (const auto& alpha : basis.indices()) out.push_back(plain_monomial(alpha));
  return out;
}

std::vector<int> random_index(int k, int dim, Philox4x32& rng) {
  const MultiIndexBasis basis(k, dim);
  const auto i = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(basis.size()));
  return basis[std::min(i, basis.size() - 1)];
}

struct RegionResult {
  double monomial = 0.0;
  double shifted = 0.0;
  double reference = 0.0;
};

CubatureCheck summarize(const std::vector<RegionResult>& per, double delta, int monos, int shifts) {
  CubatureCheck c;
  c.delta = delta;
  c.regions = static_cast<long long>(per.size());
  c.monomials = monos;
  c.shifted = shifts;
  double worst = -1.0;
  for (std::size_t i = 0; i < per.size(); ++i) {
    c.max_monomial_error = std::max(c.max_monomial_error, per[i].monomial);
    c.max_shifted_error = std::max(c.max_shifted_error, per[i].shifted);
    c.max_reference_error = std::max(c.max_reference_error, per[i].reference);
    const double e = std::max(per[i].monomial, per[i].shifted);
    if (e > worst) {
      worst = e;
      c.worst_region = static_cast<long long>(i);
    }
  }
  c.passed = c.max_monomial_error <= delta && c.max_shifted_error <= delta && c.max_reference_error <= 1e-10;
  return c;
}

double node_average(const Eigen::MatrixXd& pts, const ShiftedMonomial& g) {
  Kahan acc;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) acc.add(g(pts.row(i).transpose()));
  return acc.sum / static_cast<double>(pts.rows());
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string hash_nodes(std::span<const double> nodes) {
  std::string text;
  char buf[40];
  for (double x : nodes) {
    std::snprintf(buf, sizeof buf, "%.17g\n", x);
    text += buf;
  }
  return hex64(fnv1a64(text));
}

std::string hash_measure(const Measure1D& m) { return hex64(fnv1a64(measure_to_json(m).dump())); }

ResidualReport moment_residual(std::span<const double> nodes, const Measure1D& m, int k) {
  if (k < 1) throw ParameterError("moment_residual: k must be >= 1");
  if (nodes.empty()) throw ParameterError("moment_residual: empty node list");
  ResidualReport r;
  r.k = k;
  r.n = static_cast<long long>(nodes.size());
  std::vector<Kahan> sums(k);
  for (double x : nodes) {
    double p = x;
    for (int j = 0; j < k; ++j) {
      sums[j].add(p);
      p *= x;
    }
  }
  for (int j = 0; j < k; ++j) {
    const double e = std::abs(sums[j].sum / static_cast<double>(r.n) - moment(m, j + 1));
    r.per_degree.push_back(e);
    r.max = std::max(r.max, e);
  }
  r.nodes_hash = hash_nodes(nodes);
  r.measure_hash = hash_measure(m);
  return r;
}

NodeVector newton_oracle(const NodeVector& z, const MomentVector& p) {
  const Eigen::Index k = z.size();
  if (p.size() != k) throw ParameterError("newton_oracle: p must have the length of z");
  auto defect = [&](const NodeVector& w) {
    Eigen::VectorXd f = -p;
    for (Eigen::Index i = 0; i < k; ++i) {
      double pw = w(i);
      for (Eigen::Index j = 0; j < k; ++j) {
        f(j) += pw;
        pw *= w(i);
      }
    }
    return f;
  };
  const double tol = 1e-14 * std::max(1.0, p.cwiseAbs().maxCoeff()) * static_cast<double>(k);
  NodeVector w = z;
  Eigen::VectorXd f = defect(w);
  for (int it = 0; it < 100; ++it) {
    if (f.cwiseAbs().maxCoeff() <= tol) {
      std::sort(w.data(), w.data() + k);
      return w;
    }
    Eigen::MatrixXd jac(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      double pw = 1.0;
      for (Eigen::Index j = 0; j < k; ++j) {
        jac(j, i) = static_cast<double>(j + 1) * pw;
        pw *= w(i);
      }
    }
    const Eigen::VectorXd step = jac.fullPivLu().solve(-f);
    double lambda = 1.0;
    bool moved = false;
    for (int h = 0; h < 50; ++h, lambda *= 0.5) {
      const NodeVector cand = w + lambda * step;
      const Eigen::VectorXd fc = defect(cand);
      if (fc.cwiseAbs().maxCoeff() < f.cwiseAbs().maxCoeff()) {
        w = cand;
        f = fc;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  if (f.cwiseAbs().maxCoeff() <= 100 * tol) {
    std::sort(w.data(), w.data() + k);
    return w;
  }
  throw NumericalError("newton_oracle: no convergence");
}

double ShiftedMonomial::operator()(const Eigen::Ref<const Eigen::VectorXd>& z) const {
  double v = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    const double base = shift.size() > 0 ? z(idx) - shift(idx) : z(idx);
    for (int a = 0; a < alpha[i]; ++a) v *= base;
  }
  return v;
}

int ShiftedMonomial::degree() const {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

ShiftedMonomial plain_monomial(std::vector<int> alpha) {
  ShiftedMonomial g;
  g.shift = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(alpha.size()));
  g.alpha = std::move(alpha);
  return g;
}

ReferenceValue reference_integral(const AngleBox& box, const ShiftedMonomial& g, int resolution, double tolerance) {
  if (static_cast<int>(g.alpha.size()) != box.d() + 1) throw ParameterError("reference_integral: dimension mismatch");
  return two_resolution(box.sides, resolution, tolerance, 1.0,
                        [&](const std::vector<double>& ang) { return g(spherical_map(ang)) * sine_weight(ang); });
}

ReferenceValue reference_average(const AngleBox& box, const ShiftedMonomial& g, int resolution, double tolerance) {
  if (static_cast<int>(g.alpha.size()) != box.d() + 1) throw ParameterError("reference_average: dimension mismatch");
  return two_resolution(box.sides, resolution, tolerance, box.mass,
                        [&](const std::vector<double>& ang) { return g(spherical_map(ang)) * sine_weight(ang); });
}

ReferenceValue reference_average(const CylinderCubature& cyl, std::size_t cell, const ShiftedMonomial& g,
                                 int resolution, double tolerance) {
  const int d = cyl.unit_spec.d;
  if (static_cast<int>(g.alpha.size()) != d) throw ParameterError("reference_average: dimension mismatch");
  const CylinderCell& c = cyl.cells.at(cell);
  const AngleBox& box = cyl.sphere.partition.boxes.at(c.box);
  std::vector<Interval> sides{c.axis};
  sides.insert(sides.end(), box.sides.begin(), box.sides.end());
  const double L = cyl.unit_spec.L;
  Eigen::VectorXd w(d);
  return two_resolution(sides, resolution, tolerance, c.mass, [&](const std::vector<double>& x) {
    const std::vector<double> ang(x.begin() + 1, x.end());
    w(0) = x[0];
    w.tail(d - 1) = spherical_map(ang);
    return g(w) * axis_density(L, x[0]) * sine_weight(ang);
  });
}

double sine_estimate_error(const SineQuadrature& s, int k) {
  const Interval& iv = s.interval;
  const double weight_mass = sine_power_integral(s.q, iv.lo, iv.hi);
  double worst = 0.0;
  for (int k1 = 0; k1 <= k; ++k1) {
    for (int k2 = 0; k1 + k2 <= k; ++k2) {
      auto f = [&](double t) { return std::pow(std::sin(t), k1) * std::pow(std::cos(t), k2); };
      const double exact =
          integrate_gl_composite([&](double t) { return f(t) * std::pow(std::sin(t), s.q); }, iv.lo, iv.hi, 32, 4) /
          weight_mass;
      Kahan acc;
      for (double y : s.nodes) acc.add(f(y));
      worst = std::max(worst, std::abs(acc.sum / static_cast<double>(s.nodes.size()) - exact));
    }
  }
  return worst;
}

Eigen::VectorXd random_unit_vector(int dim, Philox4x32& rng) {
  Eigen::VectorXd v(dim);
  do {
    for (int i = 0; i < dim; ++i) {
      // Box-Muller
      const double u1 = 1.0 - rng.uniform01();
      const double u2 = rng.uniform01();
      v(i) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
  } while (v.norm() < 1e-12);
  return v.normalized();
}

CubatureCheck verify_sphere(const SphereCubature& cub, double delta, int shifts, std::uint64_t seed,
                            unsigned threads) {
  const int dim = cub.partition.d + 1;
  const std::vector<ShiftedMonomial> monos = monomials(cub.k, dim);
  std::vector<ShiftedMonomial> shifted;
  Philox4x32 rng(seed, 0);
  for (int s = 0; s < shifts; ++s) {
    ShiftedMonomial g;
    g.alpha = random_index(cub.k, dim, rng);
    g.shift = random_unit_vector(dim, rng);
    shifted.push_back(std::move(g));
  }
  std::vector<RegionResult> per(cub.partition.boxes.size());
  parallel_for(per.size(), threads, [&](std::size_t b) {
    const Eigen::MatrixXd pts = cub.points(b);
    const AngleBox& box = cub.partition.boxes[b];
    RegionResult r;
    for (const auto& g : monos) {
      const ReferenceValue ref = reference_average(box, g);
      r.monomial = std::max(r.monomial, std::abs(node_average(pts, g) - ref.value));
      r.reference = std::max(r.reference, ref.error_estimate);
    }
    for (const auto& g : shifted) {
      const ReferenceValue ref = reference_average(box, g);
      r.shifted = std::max(r.shifted, std::abs(node_average(pts, g) - ref.value));
      r.reference = std::max(r.reference, ref.error_estimate);
    }
    per[b] = r;
  });
  return summarize(per, delta, static_cast<int>(monos.size()), shifts);
}

CubatureCheck verify_cylinder(const CylinderCubature& cyl, int shifts, std::uint64_t seed, unsigned threads) {
  const int d = cyl.unit_spec.d;
  const double L = cyl.unit_spec.L;
  const std::vector<ShiftedMonomial> monos = monomials(cyl.unit_spec.k, d);
  std::vector<ShiftedMonomial> shifted;
  Philox4x32 rng(seed, 0);
  for (int s = 0; s < shifts; ++s) {
    ShiftedMonomial g;
    g.alpha = random_index(cyl.unit_spec.k, d, rng);
    g.shift.resize(d);
    g.shift(0) = rng.uniform(-2.0 * L, 2.0 * L);
    g.shift.tail(d - 1) = random_unit_vector(d - 1, rng);
    shifted.push_back(std::move(g));
  }
  std::vector<RegionResult> per(cyl.cells.size());
  parallel_for(per.size(), threads, [&](std::size_t c) {
    const Eigen::MatrixXd pts = cyl.unit_points(c);
    RegionResult r;
    for (const auto& g : monos) {
      const ReferenceValue ref = reference_average(cyl, c, g);
      r.monomial = std::max(r.monomial, std::abs(node_average(pts, g) - ref.value));
      r.reference = std::max(r.reference, ref.error_estimate);
    }
    for (const auto& g : shifted) {
      const ReferenceValue ref = reference_average(cyl, c, g);
      r.shifted = std::max(r.shifted, std::abs(node_average(pts, g) - ref.value));
      r.reference = std::max(r.reference, ref.error_estimate);
    }
    per[c] = r;
  });
  return summarize(per, cyl.unit_spec.delta, static_cast<int>(monos.size()), shifts);
}

CoverageCheck cylinder_coverage(const CylinderCubature& cyl, long long samples, std::uint64_t seed) {
  const int d = cyl.spec.d;
  Philox4x32 rng(seed, 1);
  CoverageCheck out;
  out.samples = samples;
  for (long long s = 0; s < samples; ++s) {
    // unit frame: x_1 uniform on [-L/W, L/W], direction uniform
    const double x = rng.uniform(-cyl.unit_spec.L, cyl.unit_spec.L);
    const Eigen::VectorXd dir = random_unit_vector(d - 1, rng);
    const std::vector<double> ang = inverse_spherical_map(dir);
    int hits = 0;
    for (const CylinderCell& c : cyl.cells) {
      if (c.axis.contains(x) && cyl.sphere.partition.boxes[c.box].contains(ang)) ++hits;
    }
    if (hits == 0) ++out.uncovered;
    else if (hits == 1) ++out.exactly_one;
    else ++out.multiple;
  }
  return out;
}

}  // namespace chebyquad
