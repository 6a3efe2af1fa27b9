#include "chebyquad/cubature_cylinder.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "chebyquad/config.hpp"
#include "chebyquad/error.hpp"
#include "chebyquad/parallel.hpp"

namespace chebyquad {

namespace {

// Antiderivative of v in u = x + 2L.
double v_primitive(double L, double u) { return u + u * u / (8.0 * L); }

std::optional<CylinderCubature> build_at(const CylinderCubature& base, const std::vector<Interval>& axes,
                                         long long n1, unsigned threads) {
  const CylinderSpec& us = base.unit_spec;
  auto sphere = sphere_cubature_at(base.sphere.partition, us.k,
                                   us.delta / std::pow(4.0 * us.L, us.k), n1, threads);
  if (!sphere) return std::nullopt;
  std::vector<AxisQuadrature> axis(axes.size());
  std::atomic<bool> failed{false};
  parallel_for(axes.size(), threads, [&](std::size_t i) {
    if (failed.load()) return;
    axis[i] = axis_quadrature(axes[i], us.L, us.k, n1);
    if (!axis[i].success) failed = true;
  });
  if (failed.load()) return std::nullopt;

  CylinderCubature out = base;
  out.sphere = std::move(*sphere);
  out.n1 = n1;
  out.axis_degree = axis.empty() ? 0 : axis.front().degree;
  out.max_axis_residual = 0.0;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    out.max_axis_residual = std::max(out.max_axis_residual, axis[i].residual);
    out.cells[i].axis_nodes = std::move(axis[i].nodes);
  }
  return out;
}

}  // namespace

void validate(const CylinderSpec& s) {
  if (s.d < 3) throw ParameterError("cylinder: d must be >= 3");
  if (s.k < 1) throw ParameterError("cylinder: k must be >= 1");
  if (!(s.W > 0.0)) throw ParameterError("cylinder: W must be > 0");
  if (!(s.tau > 0.0 && s.tau < s.W)) throw ParameterError("cylinder: tau must lie in (0, W)");
  if (!(s.delta > 0.0 && s.delta < std::pow(s.W, s.k))) throw ParameterError("cylinder: delta must lie in (0, W^k)");
  const double min_L = cylinder_constants(s.d).min_L;
  if (!(s.L / s.W > min_L)) {
    throw ParameterError("cylinder: L/W must exceed the frozen minimum " + std::to_string(min_L) + " for d = " +
                         std::to_string(s.d));
  }
}

double axis_density(double L, double x) { return 1.0 + (x + 2.0 * L) / (4.0 * L); }

double axis_mass(double L, double a, double b) {
  return v_primitive(L, b + 2.0 * L) - v_primitive(L, a + 2.0 * L);
}

double axis_moment(double L, double a, double b, int r) {
  // v(x) = 3/2 + x/(4L)
  auto power_integral = [&](int s) { return (std::pow(b, s + 1) - std::pow(a, s + 1)) / (s + 1); };
  return 1.5 * power_integral(r) + power_integral(r + 1) / (4.0 * L);
}

std::vector<Interval> axis_intervals(double L, double target) {
  if (!(L > 0.0)) throw ParameterError("axis_intervals: L must be > 0");
  if (!(target > 0.0)) throw ParameterError("axis_intervals: target mass must be > 0");
  const double lo = -1.5 * L;
  const double hi = 1.5 * L;
  if (target > axis_mass(L, lo, hi)) throw ParameterError("axis_intervals: target exceeds the total v-mass");
  std::vector<Interval> out;
  double a = lo;
  for (;;) {
    const double c = v_primitive(L, a + 2.0 * L) + target;
    // positive root of u + u^2/(8L) = c, in cancellation-free form
    const double u = 8.0 * L * c / (4.0 * L + std::sqrt(16.0 * L * L + 8.0 * L * c));
    const double b = u - 2.0 * L;
    if (b > hi) break;
    out.push_back({a, b});
    a = b;
  }
  if (out.empty() || !(out.back().hi > L)) throw ParameterError("axis_intervals: L too small for tau");
  return out;
}

AxisQuadrature axis_quadrature(Interval interval, double L, int k, long long n0, Mode mode) {
  if (!(interval.lo < interval.hi)) throw ParameterError("axis_quadrature: empty interval");
  AxisQuadrature out;
  out.interval = interval;
  out.degree = std::max(k, 2);
  const Measure1D weight = builtin::linear_density(axis_density(L, interval.lo), axis_density(L, interval.hi));
  const QuadratureResult res = construct_quadrature(weight, out.degree, n0, std::nullopt, mode);
  out.residual = res.residual;
  out.success = res.success;
  out.nodes.reserve(res.nodes.size());
  for (double t : res.nodes) out.nodes.push_back(interval.lo + interval.length() * std::clamp(t, 0.0, 1.0));
  return out;
}

long long CylinderCubature::points_per_cell() const { return n1 * sphere.points_per_box(); }

Eigen::MatrixXd CylinderCubature::unit_points(std::size_t cell) const {
  const CylinderCell& c = cells.at(cell);
  const Eigen::MatrixXd sph = sphere.points(c.box);
  const auto n_axis = static_cast<Eigen::Index>(c.axis_nodes.size());
  Eigen::MatrixXd pts(n_axis * sph.rows(), spec.d);
  for (Eigen::Index s = 0; s < sph.rows(); ++s) {
    for (Eigen::Index a = 0; a < n_axis; ++a) {
      const Eigen::Index row = s * n_axis + a;
      pts(row, 0) = c.axis_nodes[a];
      pts.row(row).tail(spec.d - 1) = sph.row(s);
    }
  }
  return pts;
}

Eigen::MatrixXd CylinderCubature::points(std::size_t cell) const { return spec.W * unit_points(cell); }

long long CylinderCubature::locate(const Eigen::VectorXd& x) const {
  if (x.size() != spec.d) return -1;
  const Eigen::VectorXd u = x / spec.W;
  const std::vector<double> ang = inverse_spherical_map(u.tail(spec.d - 1));
  const long long box = sphere.partition.locate(ang);
  if (box < 0) return -1;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].box == static_cast<std::size_t>(box) && cells[i].axis.contains(u(0))) return static_cast<long long>(i);
  }
  return -1;
}

CylinderCubature cylinder_layout(const CylinderSpec& spec) {
  if (spec.d < 3 || spec.k < 1 || !(spec.W > 0.0) || !(spec.L > 0.0) || !(spec.tau > 0.0 && spec.tau < spec.W))
    throw ParameterError("cylinder_layout: need d >= 3, k >= 1, L, W > 0 and 0 < tau < W");
  CylinderCubature base;
  base.spec = spec;
  base.unit_spec = spec;
  base.unit_spec.W = 1.0;
  base.unit_spec.L = spec.L / spec.W;
  base.unit_spec.tau = spec.tau / spec.W;
  base.unit_spec.delta = spec.delta / std::pow(spec.W, spec.k);
  const CylinderSpec& us = base.unit_spec;

  base.sphere.partition = partition_sphere(us.d - 2, us.tau);
  const SpherePartition& partition = base.sphere.partition;
  const double cell_mass = std::pow(us.tau, us.d - 1);
  for (std::size_t b = 0; b < partition.boxes.size(); ++b) {
    const AngleBox& box = partition.boxes[b];
    const std::vector<Interval> ivs = axis_intervals(us.L, cell_mass / box.mass);
    for (std::size_t q = 0; q < ivs.size(); ++q) {
      CylinderCell c;
      c.axis = ivs[q];
      c.box = b;
      c.q = static_cast<int>(q) + 1;
      c.mass = axis_mass(us.L, ivs[q].lo, ivs[q].hi) * box.mass;
      c.diameter_bound = std::hypot(ivs[q].length(), box.diameter_bound);
      base.cells.push_back(std::move(c));
    }
  }
  return base;
}

CylinderCubature cylinder_cubature(const CylinderSpec& spec, CylinderOptions options) {
  validate(spec);
  const CylinderCubature base = cylinder_layout(spec);
  const CylinderSpec& us = base.unit_spec;
  std::vector<Interval> axes;
  axes.reserve(base.cells.size());
  for (const CylinderCell& c : base.cells) axes.push_back(c.axis);

  const double gamma = us.delta / std::pow(4.0 * us.L, us.k) / ((us.d - 2) * std::pow(2.0, us.k));
  const int sphere_degree = std::max(sine_degree(us.k, gamma), 2);
  const int degree = std::max(sphere_degree, std::max(us.k, 2));
  if (options.n1) {
    auto out = build_at(base, axes, *options.n1, options.threads);
    if (!out) throw ConstructionError("cylinder_cubature: factor construction failed at n1 = " +
                                      std::to_string(*options.n1));
    return std::move(*out);
  }
  for (long long n1 = static_cast<long long>(degree) * (degree + 3); n1 <= options.n_max; ++n1) {
    if (auto out = build_at(base, axes, n1, options.threads)) return std::move(*out);
  }
  throw ConstructionError("cylinder_cubature: no common n1 <= " + std::to_string(options.n_max) + " succeeded");
}

}  // namespace chebyquad
