#include "chebyquad/cubature_sphere.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

#include "chebyquad/error.hpp"
#include "chebyquad/parallel.hpp"

namespace chebyquad {

namespace {

constexpr double pi = std::numbers::pi;

// Smallest m >= 1 with (m+1) log(k e/(m+1)) <= log(bound).
int taylor_degree(int k, double bound) {
  if (k < 1 || !(bound > 0.0)) throw ParameterError("degree search: need k >= 1 and a positive bound");
  const double log_bound = std::log(bound);
  const double log_ke = std::log(k * std::numbers::e);
  for (int m = 1;; ++m) {
    if ((m + 1) * (log_ke - std::log(m + 1.0)) <= log_bound) return m;
  }
}

double max_sin(const Interval& iv) {
  if (iv.lo <= pi / 2 && iv.hi >= pi / 2) return 1.0;
  return std::max(std::sin(iv.lo), std::sin(iv.hi));
}

void partition_rec(int d, double tau, std::vector<Interval>& suffix, std::vector<std::vector<Interval>>& out) {
  if (d == 1) {
    const long long m = static_cast<long long>(std::ceil(2 * pi / tau));
    for (long long i = 0; i < m; ++i) {
      std::vector<Interval> sides{{2 * pi * i / m, i + 1 == m ? 2 * pi : 2 * pi * (i + 1) / m}};
      sides.insert(sides.end(), suffix.rbegin(), suffix.rend());
      out.push_back(std::move(sides));
    }
    return;
  }
  const long long m = static_cast<long long>(std::ceil(pi / tau));
  for (long long i = 0; i < m; ++i) {
    const Interval iv{pi * i / m, i + 1 == m ? pi : pi * (i + 1) / m};
    const double r = std::sin(0.5 * (iv.lo + iv.hi));
    const double tau_sub = std::min(tau / r, 0.5);
    suffix.push_back(iv);
    partition_rec(d - 1, tau_sub, suffix, out);
    suffix.pop_back();
  }
}

double sampled_diameter(std::span<const Interval> sides) {
  const int d = static_cast<int>(sides.size());
  long long total = 1;
  for (int i = 0; i < d; ++i) total *= 3;
  std::vector<Eigen::VectorXd> pts;
  std::vector<double> ang(d);
  for (long long idx = 0; idx < total; ++idx) {
    long long rem = idx;
    for (int i = 0; i < d; ++i) {
      const int s = static_cast<int>(rem % 3);
      rem /= 3;
      ang[i] = sides[i].lo + 0.5 * s * sides[i].length();
    }
    pts.push_back(spherical_map(ang));
  }
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).norm());
  return best;
}

}  // namespace

bool AngleBox::contains(std::span<const double> ang, double tol) const {
  if (ang.size() != sides.size()) return false;
  for (std::size_t i = 0; i < sides.size(); ++i)
    if (!sides[i].contains(ang[i], tol)) return false;
  return true;
}

double SpherePartition::total_mass() const {
  double s = 0.0;
  for (const AngleBox& b : boxes) s += b.mass;
  return s;
}

long long SpherePartition::locate(std::span<const double> ang) const {
  for (std::size_t i = 0; i < boxes.size(); ++i)
    if (boxes[i].contains(ang)) return static_cast<long long>(i);
  return -1;
}

int m0(int d, int k, double delta) {
  if (d < 1 || k < 1 || !(delta > 0.0)) throw ParameterError("m0: need d, k >= 1 and delta > 0");
  return taylor_degree(k, delta / (2.0 * d * std::pow(2.0, k)));
}

int sine_degree(int k, double gamma) {
  if (!(gamma > 0.0)) throw ParameterError("sine_degree: gamma must be > 0");
  return taylor_degree(k, gamma / 2.0);
}

double sphere_area(int d) {
  if (d < 1) throw ParameterError("sphere_area: d must be >= 1");
  double a = 2 * pi;
  for (int q = 1; q < d; ++q) a *= sine_power_integral(q, 0.0, pi);
  return a;
}

Eigen::VectorXd spherical_map(std::span<const double> ang) {
  const int d = static_cast<int>(ang.size());
  if (d < 1) throw ParameterError("spherical_map: need at least one angle");
  Eigen::VectorXd x(d + 1);
  x(0) = std::sin(ang[0]);
  x(1) = std::cos(ang[0]);
  for (int q = 1; q < d; ++q) {
    const double s = std::sin(ang[q]);
    x.head(q + 1) *= s;
    x(q + 1) = std::cos(ang[q]);
  }
  return x;
}

std::vector<double> inverse_spherical_map(const Eigen::VectorXd& x) {
  const int d = static_cast<int>(x.size()) - 1;
  if (d < 1) throw ParameterError("inverse_spherical_map: need a vector in R^{d+1}, d >= 1");
  std::vector<double> ang(d, 0.0);
  for (int q = d - 1; q >= 1; --q) {
    const double norm = x.head(q + 2).norm();
    ang[q] = norm > 0.0 ? std::acos(std::clamp(x(q + 1) / norm, -1.0, 1.0)) : 0.0;
  }
  double phi = std::atan2(x(0), x(1));
  if (phi < 0.0) phi += 2 * pi;
  if (phi >= 2 * pi) phi = 0.0;
  ang[0] = phi;
  return ang;
}

double box_mass(std::span<const Interval> sides) {
  double m = sides[0].length();
  for (std::size_t q = 1; q < sides.size(); ++q)
    m *= sine_power_integral(static_cast<int>(q), sides[q].lo, sides[q].hi);
  return m;
}

double box_diameter_bound(std::span<const Interval> sides) {
  auto chord = [](double len) { return len >= pi ? 2.0 : 2.0 * std::sin(0.5 * len); };
  double diam = chord(sides[0].length());
  for (std::size_t q = 1; q < sides.size(); ++q) {
    const double c = chord(sides[q].length());
    const double s = max_sin(sides[q]);
    diam = std::min(2.0, std::sqrt(c * c + s * s * diam * diam));
  }
  return diam;
}

SpherePartition partition_sphere(int d, double tau) {
  if (d < 1) throw ParameterError("partition_sphere: d must be >= 1");
  if (!(tau > 0.0 && tau <= 1.0)) throw ParameterError("partition_sphere: tau must lie in (0, 1]");
  std::vector<std::vector<Interval>> raw;
  std::vector<Interval> suffix;
  partition_rec(d, tau, suffix, raw);
  SpherePartition p;
  p.d = d;
  p.tau = tau;
  p.boxes.reserve(raw.size());
  for (auto& sides : raw) {
    AngleBox b;
    b.sides = std::move(sides);
    b.mass = box_mass(b.sides);
    b.diameter_bound = box_diameter_bound(b.sides);
    b.diameter_sampled = sampled_diameter(b.sides);
    p.boxes.push_back(std::move(b));
  }
  return p;
}

CertificateCheck check_certificates(const SpherePartition& p, double C, double c) {
  CertificateCheck out;
  out.min_mass_ratio = std::numeric_limits<double>::infinity();
  const double td = std::pow(p.tau, p.d);
  for (const AngleBox& b : p.boxes) {
    out.max_diameter_ratio = std::max(out.max_diameter_ratio, b.diameter_bound / p.tau);
    out.min_mass_ratio = std::min(out.min_mass_ratio, b.mass / td);
  }
  out.count_ratio = static_cast<double>(p.boxes.size()) * td;
  out.holds = out.max_diameter_ratio <= C && out.min_mass_ratio >= c && out.count_ratio <= C;
  return out;
}

SineQuadrature sine_weight_quadrature(int q, Interval interval, int k, double gamma, long long n, Mode mode) {
  const double limit = q == 0 ? 2 * pi : pi;
  if (q < 0) throw ParameterError("sine_weight_quadrature: q must be >= 0");
  if (!(interval.lo >= 0.0 && interval.hi <= limit + 1e-12 && interval.lo < interval.hi &&
        interval.length() <= 1.0 + 1e-12)) {
    throw ParameterError("sine_weight_quadrature: need 0 <= lo < hi <= tau_q and hi - lo <= 1");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ParameterError("sine_weight_quadrature: gamma must lie in (0, 1]");
  SineQuadrature out;
  out.q = q;
  out.interval = interval;
  out.degree = std::max(sine_degree(k, gamma), 2);
  const Measure1D weight = q == 0 ? builtin::uniform() : builtin::sine_power_weight(q, interval.lo, interval.hi);
  const QuadratureResult res = construct_quadrature(weight, out.degree, n, std::nullopt, mode);
  out.residual = res.residual;
  out.success = res.success;
  out.nodes.reserve(res.nodes.size());
  for (double t : res.nodes) out.nodes.push_back(interval.lo + interval.length() * std::clamp(t, 0.0, 1.0));
  return out;
}

long long SphereCubature::points_per_box() const {
  long long N = 1;
  for (int i = 0; i < partition.d; ++i) N *= n;
  return N;
}

Eigen::MatrixXd SphereCubature::points(std::size_t box) const {
  const int d = partition.d;
  const long long N = points_per_box();
  Eigen::MatrixXd pts(N, d + 1);
  std::vector<double> ang(d);
  const auto& f = factors.at(box);
  for (long long idx = 0; idx < N; ++idx) {
    long long rem = idx;
    for (int q = 0; q < d; ++q) {
      ang[q] = f[q][rem % n];
      rem /= n;
    }
    pts.row(idx) = spherical_map(ang).transpose();
  }
  return pts;
}

std::optional<SphereCubature> sphere_cubature_at(const SpherePartition& partition, int k, double delta, long long n,
                                                 unsigned threads) {
  const int d = partition.d;
  const double gamma = delta / (d * std::pow(2.0, k));
  // distinct factors: q = 0 is the uniform weight on every phi interval
  std::map<std::tuple<int, double, double>, std::size_t> index;
  std::vector<std::tuple<int, double, double>> keys;
  auto key_of = [](int q, const Interval& iv) {
    return q == 0 ? std::tuple<int, double, double>{0, 0.0, 1.0} : std::tuple<int, double, double>{q, iv.lo, iv.hi};
  };
  for (const AngleBox& b : partition.boxes) {
    for (int q = 0; q < d; ++q) {
      auto key = key_of(q, b.sides[q]);
      if (index.emplace(key, keys.size()).second) keys.push_back(key);
    }
  }
  std::vector<SineQuadrature> solved(keys.size());
  std::atomic<bool> failed{false};
  parallel_for(keys.size(), threads, [&](std::size_t i) {
    if (failed.load()) return;
    const auto& [q, lo, hi] = keys[i];
    solved[i] = sine_weight_quadrature(q, {lo, hi}, k, gamma, n, Mode::best_effort);
    if (!solved[i].success) failed = true;
  });
  if (failed.load()) return std::nullopt;

  SphereCubature cub;
  cub.partition = partition;
  cub.k = k;
  cub.delta = delta;
  cub.gamma = gamma;
  cub.n = n;
  cub.degree = solved.empty() ? 0 : solved.front().degree;
  for (const SineQuadrature& s : solved) cub.max_factor_residual = std::max(cub.max_factor_residual, s.residual);
  cub.factors.resize(partition.boxes.size());
  for (std::size_t b = 0; b < partition.boxes.size(); ++b) {
    const AngleBox& box = partition.boxes[b];
    cub.factors[b].resize(d);
    for (int q = 0; q < d; ++q) {
      const SineQuadrature& s = solved[index.at(key_of(q, box.sides[q]))];
      if (q == 0) {
        // unit-interval nodes, mapped onto this phi interval
        auto& out = cub.factors[b][0];
        out.reserve(s.nodes.size());
        for (double t : s.nodes) out.push_back(box.sides[0].lo + box.sides[0].length() * t);
      } else {
        cub.factors[b][q] = s.nodes;
      }
    }
  }
  return cub;
}

SphereCubature sphere_cubature(int d, int k, double tau, double delta, SphereOptions options) {
  if (d < 1 || k < 1) throw ParameterError("sphere_cubature: need d, k >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("sphere_cubature: delta must lie in (0, 1)");
  const SpherePartition partition = partition_sphere(d, tau);
  const double gamma = delta / (d * std::pow(2.0, k));
  const int degree = std::max(sine_degree(k, gamma), 2);
  if (options.n) {
    auto cub = sphere_cubature_at(partition, k, delta, *options.n, options.threads);
    if (!cub) throw ConstructionError("sphere_cubature: factor construction failed at n = " + std::to_string(*options.n));
    return std::move(*cub);
  }
  for (long long n = static_cast<long long>(degree) * (degree + 3); n <= options.n_max; ++n) {
    if (auto cub = sphere_cubature_at(partition, k, delta, n, options.threads)) return std::move(*cub);
  }
  throw ConstructionError("sphere_cubature: no common n <= " + std::to_string(options.n_max) + " succeeded");
}

}  // namespace chebyquad
