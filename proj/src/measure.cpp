#include "chebyquad/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "chebyquad/error.hpp"

namespace chebyquad {

namespace {

constexpr double kMassTol = 1e-12;
constexpr double kEventTol = 1e-14;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double horner(const std::array<double, 4>& c, double t) {
  return ((c[3] * t + c[2]) * t + c[1]) * t + c[0];
}

// int_0^h t^l exp(rate t) dt as a series of positive terms.
double exp_power_integral(int l, double rate, double h) {
  if (h <= 0.0) return 0.0;
  const double hl = std::pow(h, l + 1);
  if (rate == 0.0) return hl / (l + 1);
  if (rate < 0.0) {
    // lower incomplete gamma: h^{l+1} e^{-x} sum_n x^n / ((l+1)...(l+1+n))
    const double x = -rate * h;
    double term = 1.0 / (l + 1);
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
      term *= x / (l + 1 + n);
      sum += term;
      if (n > x && term < 1e-17 * sum) break;
    }
    return hl * std::exp(-x) * sum;
  }
  const double x = rate * h;
  double coef = 1.0;  // x^n / n!
  double sum = 1.0 / (l + 1);
  for (int n = 1; n < 10000; ++n) {
    coef *= x / n;
    const double term = coef / (l + 1 + n);
    sum += term;
    if (n > x && term < 1e-17 * sum) break;
  }
  return hl * sum;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Solve cdf_local(t) = target on [0, h] by safeguarded Newton.
template <class Cdf, class Density>
double invert_monotone(Cdf&& cdf_local, Density&& dens_local, double target, double h) {
  double lo = 0.0;
  double hi = h;
  double t = 0.5 * h;
  for (int iter = 0; iter < 200; ++iter) {
    const double f = cdf_local(t) - target;
    if (f == 0.0) return t;
    if (f > 0.0)
      hi = t;
    else
      lo = t;
    const double d = dens_local(t);
    double next = (d > 0.0) ? t - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-16 * std::max(1.0, std::abs(t)) || hi - lo <= 4e-16 * h) {
      return next;
    }
    t = next;
  }
  return t;
}

double piece_local_cdf(const DensityPiece& piece, double t) {
  return std::visit(
      overloaded{
          [t](const PolynomialPiece& p) {
            const auto& c = p.coeffs;
            return t * (c[0] + t * (c[1] / 2.0 + t * (c[2] / 3.0 + t * c[3] / 4.0)));
          },
          [t](const ExponentialPiece& p) {
            if (p.rate == 0.0) return p.scale * t;
            return p.scale * std::expm1(p.rate * t) / p.rate;
          },
          [t](const SinePowerPiece& p) {
            if (t <= 0.0) return 0.0;
            return integrate_gl_composite(
                [&p](double s) { return p.scale * std::pow(std::sin(p.freq * s + p.phase), p.power); },
                0.0, t, 40, 2);
          }},
      piece);
}

double piece_local_density(const DensityPiece& piece, double t) {
  return std::visit(overloaded{[t](const PolynomialPiece& p) { return horner(p.coeffs, t); },
                               [t](const ExponentialPiece& p) { return p.scale * std::exp(p.rate * t); },
                               [t](const SinePowerPiece& p) {
                                 return p.scale * std::pow(std::sin(p.freq * t + p.phase), p.power);
                               }},
                    piece);
}

// Smallest global x in the piece with mass([lo, x]) = target.
double piece_inverse_cdf(const DensityPiece& piece, double target) {
  const Interval& iv = piece_interval(piece);
  const double h = iv.length();
  if (target <= 0.0) return iv.lo;
  const double total = piece_local_cdf(piece, h);
  if (target >= total) return iv.hi;
  double t = std::visit(
      overloaded{
          [&](const PolynomialPiece& p) {
            const auto& c = p.coeffs;
            if (c[1] == 0.0 && c[2] == 0.0 && c[3] == 0.0) return target / c[0];
            return invert_monotone([&](double s) { return piece_local_cdf(piece, s); },
                                   [&](double s) { return horner(c, s); }, target, h);
          },
          [&](const ExponentialPiece& p) {
            if (p.rate == 0.0) return target / p.scale;
            return std::log1p(p.rate * target / p.scale) / p.rate;
          },
          [&](const SinePowerPiece&) {
            return invert_monotone([&](double s) { return piece_local_cdf(piece, s); },
                                   [&](double s) { return piece_local_density(piece, s); }, target,
                                   h);
          }},
      piece);
  return iv.lo + std::clamp(t, 0.0, h);
}

// Extremes of the density over a piece: {min, max}.
std::pair<double, double> piece_density_range(const DensityPiece& piece) {
  const double h = piece_interval(piece).length();
  return std::visit(
      overloaded{
          [h](const PolynomialPiece& p) {
            const auto& c = p.coeffs;
            std::vector<double> ts{0.0, h};
            // roots of c1 + 2 c2 t + 3 c3 t^2
            const double a = 3.0 * c[3];
            const double b = 2.0 * c[2];
            const double cc = c[1];
            if (a != 0.0) {
              const double disc = b * b - 4.0 * a * cc;
              if (disc >= 0.0) {
                const double sq = std::sqrt(disc);
                ts.push_back((-b + sq) / (2.0 * a));
                ts.push_back((-b - sq) / (2.0 * a));
              }
            } else if (b != 0.0) {
              ts.push_back(-cc / b);
            }
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (double t : ts) {
              if (t < 0.0 || t > h) continue;
              const double v = horner(c, t);
              lo = std::min(lo, v);
              hi = std::max(hi, v);
            }
            return std::pair{lo, hi};
          },
          [h](const ExponentialPiece& p) {
            const double a = p.scale;
            const double b = p.scale * std::exp(p.rate * h);
            return std::pair{std::min(a, b), std::max(a, b)};
          },
          [h](const SinePowerPiece& p) {
            double a0 = p.phase;
            double a1 = p.freq * h + p.phase;
            if (a0 > a1) std::swap(a0, a1);
            double smin = std::min(std::sin(a0), std::sin(a1));
            double smax = std::max(std::sin(a0), std::sin(a1));
            const double pi = std::numbers::pi;
            // interior extrema of sin at pi/2 + j*pi
            for (double j = std::ceil((a0 - pi / 2) / pi); pi / 2 + j * pi <= a1; j += 1.0) {
              const double v = std::sin(pi / 2 + j * pi);
              smin = std::min(smin, v);
              smax = std::max(smax, v);
            }
            double vmin;
            double vmax;
            if (p.power == 0) {
              vmin = vmax = 1.0;
            } else if (p.power % 2 == 1) {
              vmin = std::pow(smin, p.power);
              vmax = std::pow(smax, p.power);
            } else {
              const bool crosses = smin <= 0.0 && smax >= 0.0;
              vmin = crosses ? 0.0 : std::pow(std::min(std::abs(smin), std::abs(smax)), p.power);
              vmax = std::pow(std::max(std::abs(smin), std::abs(smax)), p.power);
            }
            return std::pair{p.scale * vmin, p.scale * vmax};
          }},
      piece);
}

// Re-express a piece under x' = scale * x + shift.
DensityPiece map_piece(const DensityPiece& piece, double scale, double shift) {
  const Interval& iv = piece_interval(piece);
  const double h = iv.length();
  const double a = std::abs(scale);
  Interval out{scale > 0 ? scale * iv.lo + shift : scale * iv.hi + shift,
               scale > 0 ? scale * iv.hi + shift : scale * iv.lo + shift};
  // old local t = c0 + c1 * t'
  const double c0 = scale > 0 ? 0.0 : h;
  const double c1 = scale > 0 ? 1.0 / a : -1.0 / a;
  return std::visit(
      overloaded{[&](const PolynomialPiece& p) -> DensityPiece {
                   PolynomialPiece q{out, {}};
                   for (int i = 0; i < 4; ++i) {
                     // expand p.coeffs[i] * (c0 + c1 t')^i
                     for (int l = 0; l <= i; ++l) {
                       q.coeffs[l] += p.coeffs[i] * binomial(i, l) * std::pow(c0, i - l) *
                                      std::pow(c1, l);
                     }
                   }
                   for (double& c : q.coeffs) c /= a;
                   return q;
                 },
                 [&](const ExponentialPiece& p) -> DensityPiece {
                   return ExponentialPiece{out, p.scale * std::exp(p.rate * c0) / a, p.rate * c1};
                 },
                 [&](const SinePowerPiece& p) -> DensityPiece {
                   return SinePowerPiece{out, p.scale / a, p.power, p.freq * c1,
                                         p.freq * c0 + p.phase};
                 }},
      piece);
}

}  // namespace

// ---------------------------------------------------------------------------
// pieces

const Interval& piece_interval(const DensityPiece& piece) {
  return std::visit([](const auto& p) -> const Interval& { return p.interval; }, piece);
}

double piece_density(const DensityPiece& piece, double x) {
  return piece_local_density(piece, x - piece_interval(piece).lo);
}

double piece_cdf(const DensityPiece& piece, double x) {
  const Interval& iv = piece_interval(piece);
  return piece_local_cdf(piece, std::clamp(x, iv.lo, iv.hi) - iv.lo);
}

double piece_mass(const DensityPiece& piece) {
  return piece_local_cdf(piece, piece_interval(piece).length());
}

double piece_max_density(const DensityPiece& piece) { return piece_density_range(piece).second; }

double piece_moment(const DensityPiece& piece, int j) {
  const Interval& iv = piece_interval(piece);
  return std::visit(
      overloaded{
          [&](const PolynomialPiece& p) {
            const double h = iv.length();
            if (std::abs(iv.lo) <= h) {
              // closed form in s = x - lo; exact in floating point when lo = 0
              double sum = 0.0;
              for (int l = 0; l <= j; ++l) {
                const double lo_pow = (j - l == 0) ? 1.0 : std::pow(iv.lo, j - l);
                if (lo_pow == 0.0) continue;
                for (std::size_t i = 0; i < p.coeffs.size(); ++i)
                  sum += binomial(j, l) * lo_pow * p.coeffs[i] * std::pow(h, l + i + 1) /
                         static_cast<double>(l + i + 1);
              }
              return sum;
            }
            // degree j + 3 integrand: a rule with j/2 + 3 points is exact
            return integrate_gl(
                [&](double x) { return std::pow(x, j) * horner(p.coeffs, x - iv.lo); }, iv.lo,
                iv.hi, j / 2 + 3);
          },
          [&](const ExponentialPiece& p) {
            // expand about the endpoint carrying the larger density
            const bool from_hi = p.rate > 0.0;
            const double c = from_hi ? iv.hi : iv.lo;
            const double rate = from_hi ? -p.rate : p.rate;
            double sum = 0.0;
            for (int l = 0; l <= j; ++l) {
              const double c_pow = (j - l == 0) ? 1.0 : std::pow(c, j - l);
              if (c_pow == 0.0) continue;
              const double sign = (from_hi && l % 2 == 1) ? -1.0 : 1.0;
              sum += sign * binomial(j, l) * c_pow * exp_power_integral(l, rate, iv.length());
            }
            return from_hi ? p.scale * std::exp(p.rate * iv.length()) * sum : p.scale * sum;
          },
          [&](const SinePowerPiece& p) {
            return integrate_gl_composite(
                [&](double x) {
                  return std::pow(x, j) * p.scale *
                         std::pow(std::sin(p.freq * (x - iv.lo) + p.phase), p.power);
                },
                iv.lo, iv.hi, 48, 4);
          }},
      piece);
}

double sine_power_integral(int power, double lo, double hi) {
  if (power < 0) throw ParameterError("sine_power_integral: power must be >= 0");
  // I_q = [-sin^{q-1} cos / q] + (q-1)/q I_{q-2}
  double even = hi - lo;
  double odd = 2.0 * std::sin(0.5 * (lo + hi)) * std::sin(0.5 * (hi - lo));  // cos lo - cos hi
  if (power == 0) return even;
  if (power == 1) return odd;
  double prev = (power % 2 == 0) ? even : odd;
  const double sl = std::sin(lo);
  const double cl = std::cos(lo);
  const double sh = std::sin(hi);
  const double ch = std::cos(hi);
  for (int q = (power % 2 == 0) ? 2 : 3; q <= power; q += 2) {
    const double boundary = -(std::pow(sh, q - 1) * ch - std::pow(sl, q - 1) * cl) / q;
    prev = boundary + (q - 1.0) / q * prev;
  }
  return prev;
}

std::vector<DensityPiece> scale_pieces(std::span<const DensityPiece> pieces, double factor) {
  std::vector<DensityPiece> out;
  out.reserve(pieces.size());
  for (const DensityPiece& piece : pieces) {
    out.push_back(std::visit(overloaded{[factor](PolynomialPiece p) -> DensityPiece {
                                          for (double& c : p.coeffs) c *= factor;
                                          return p;
                                        },
                                        [factor](ExponentialPiece p) -> DensityPiece {
                                          p.scale *= factor;
                                          return p;
                                        },
                                        [factor](SinePowerPiece p) -> DensityPiece {
                                          p.scale *= factor;
                                          return p;
                                        }},
                             piece));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Measure1D

Measure1D::Measure1D(Interval support, std::vector<Atom> atoms, std::vector<DensityPiece> pieces)
    : support_(support), atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  validate();
  build_events();
}

void Measure1D::validate() const {
  auto fail = [](const std::string& what) { throw ValidationError("measure: " + what); };
  if (!(std::isfinite(support_.lo) && std::isfinite(support_.hi)) || !(support_.lo < support_.hi))
    fail("support must be a finite nondegenerate interval [a, b] with a < b");
  const double tol = 1e-12 * std::max(1.0, support_.length());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    if (!std::isfinite(a.x) || !support_.contains(a.x, tol))
      fail("atom location outside the support");
    if (!(a.mass > 0.0)) fail("atom mass must be > 0");
    if (i > 0 && !(atoms_[i - 1].x < a.x)) fail("atom locations must be strictly increasing");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Interval& iv = piece_interval(pieces_[i]);
    if (!(iv.lo < iv.hi)) fail("density piece interval must have lo < hi");
    if (!support_.contains(iv.lo, tol) || !support_.contains(iv.hi, tol))
      fail("density piece outside the support");
    if (i > 0 && piece_interval(pieces_[i - 1]).hi > iv.lo + tol)
      fail("density pieces must be ordered and non-overlapping");
    const auto [dmin, dmax] = piece_density_range(pieces_[i]);
    if (!std::isfinite(dmax)) fail("density must be finite");
    if (dmin < -1e-13 * std::max(1.0, dmax)) fail("density must be nonnegative");
    if (const auto* s = std::get_if<SinePowerPiece>(&pieces_[i]); s && s->power < 0)
      fail("sine power must be >= 0");
  }
  double mass = 0.0;
  for (const Atom& a : atoms_) mass += a.mass;
  for (const DensityPiece& p : pieces_) mass += piece_mass(p);
  if (std::abs(mass - 1.0) > kMassTol) {
    std::ostringstream os;
    os.precision(17);
    os << "total mass must equal 1 within 1e-12 (got " << mass << ")";
    fail(os.str());
  }
}

void Measure1D::build_events() {
  // split pieces at interior atoms
  std::vector<Event> spans;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Interval& iv = piece_interval(pieces_[i]);
    double lo = iv.lo;
    for (const Atom& a : atoms_) {
      if (a.x > lo && a.x < iv.hi) {
        spans.push_back({false, lo, a.x, 0.0, 0.0, i});
        lo = a.x;
      }
    }
    spans.push_back({false, lo, iv.hi, 0.0, 0.0, i});
  }
  for (Event& s : spans)
    s.mass = piece_cdf(pieces_[s.piece], s.hi) - piece_cdf(pieces_[s.piece], s.lo);

  events_.clear();
  std::size_t ia = 0;
  std::size_t is = 0;
  while (ia < atoms_.size() || is < spans.size()) {
    const bool take_atom =
        is == spans.size() || (ia < atoms_.size() && atoms_[ia].x <= spans[is].lo);
    if (take_atom) {
      events_.push_back({true, atoms_[ia].x, atoms_[ia].x, atoms_[ia].mass, 0.0, 0});
      ++ia;
    } else {
      events_.push_back(spans[is++]);
    }
  }
  double cum = 0.0;
  for (Event& e : events_) {
    e.cum_before = cum;
    cum += e.mass;
  }
  total_mass_ = cum;
}

double Measure1D::max_atom_mass() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m = std::max(m, a.mass);
  return m;
}

double Measure1D::atom_mass_at(double x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, double v) { return a.x < v; });
  return (it != atoms_.end() && it->x == x) ? it->mass : 0.0;
}

double Measure1D::density(double x) const {
  for (const DensityPiece& p : pieces_) {
    const Interval& iv = piece_interval(p);
    if (x >= iv.lo && x < iv.hi) return piece_density(p, x);
  }
  return 0.0;
}

std::optional<double> Measure1D::density_bound() const {
  if (!atoms_.empty()) return std::nullopt;
  double m = 0.0;
  for (const DensityPiece& p : pieces_) m = std::max(m, piece_max_density(p));
  return m;
}

double cdf(const Measure1D& m, double x) {
  if (x < m.support_.lo) return 0.0;
  double value = m.total_mass_;
  for (const auto& e : m.events_) {
    if (e.is_atom) {
      if (e.lo > x) {
        value = e.cum_before;
        break;
      }
      continue;
    }
    if (e.hi <= x) continue;
    if (e.lo >= x) {
      value = e.cum_before;
      break;
    }
    const auto& piece = m.pieces_[e.piece];
    value = e.cum_before + piece_cdf(piece, x) - piece_cdf(piece, e.lo);
    break;
  }
  return std::clamp(value, 0.0, 1.0);
}

double Measure1D::cdf_left(double x) const {
  return std::max(0.0, cdf(*this, x) - atom_mass_at(x));
}

double quantile(const Measure1D& m, double p) {
  if (!(p > 0.0 && p <= 1.0 + kEventTol))
    throw ParameterError("quantile: p must lie in (0, 1]");
  double last = m.support_.lo;
  for (const auto& e : m.events_) {
    if (e.mass <= 0.0) continue;
    last = e.hi;
    if (e.cum_before + e.mass < p - kEventTol) continue;
    if (e.is_atom) return e.lo;
    const auto& piece = m.pieces_[e.piece];
    const double base = piece_cdf(piece, e.lo);
    const double target = base + std::clamp(p - e.cum_before, 0.0, e.mass);
    return std::clamp(piece_inverse_cdf(piece, target), e.lo, e.hi);
  }
  return last;
}

double Measure1D::upper_quantile(double p) const {
  double last = support_.lo;
  for (const auto& e : events_) {
    if (e.mass <= 0.0) continue;
    last = e.hi;
    if (e.cum_before + e.mass <= p + kEventTol) continue;
    if (e.is_atom) return e.lo;
    const auto& piece = pieces_[e.piece];
    const double need = p - e.cum_before;
    if (need <= 0.0) return e.lo;
    const double base = piece_cdf(piece, e.lo);
    return std::clamp(piece_inverse_cdf(piece, base + need), e.lo, e.hi);
  }
  return last;
}

std::vector<double> Measure1D::breakpoints() const {
  std::vector<double> b{support_.lo, support_.hi};
  for (const Atom& a : atoms_) b.push_back(a.x);
  for (const DensityPiece& p : pieces_) {
    b.push_back(piece_interval(p).lo);
    b.push_back(piece_interval(p).hi);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

// ---------------------------------------------------------------------------
// free operations

double moment(const Measure1D& m, int j) {
  if (j < 0) throw ParameterError("moment: order must be >= 0");
  if (j == 0) return 1.0;
  double sum = 0.0;
  for (const Atom& a : m.atoms()) sum += a.mass * std::pow(a.x, j);
  for (const DensityPiece& p : m.pieces()) sum += piece_moment(p, j);
  return sum;
}

double inverse_modulus(const Measure1D& m, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("inverse_modulus: delta must lie in (0, 1)");
  if (m.max_atom_mass() >= delta) return 0.0;

  const double inf = std::numeric_limits<double>::infinity();
  // shortest closed interval with left end x and mass >= delta
  auto right_end = [&](double x) {
    const double p = m.cdf_left(x) + delta;
    if (p > m.total_mass() + 1e-13) return inf;
    return quantile(m, std::min(p, 1.0));
  };
  auto length = [&](double x) { return right_end(x) - x; };

  std::vector<double> xs = m.breakpoints();
  for (double b : m.breakpoints()) {
    const double p = cdf(m, b) - delta;
    if (p >= -1e-15) xs.push_back(m.upper_quantile(std::max(p, 0.0)));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  double best = inf;
  for (double x : xs) best = std::min(best, length(x));

  // within a region the length is smooth; interior minima satisfy f(x) = f(y(x))
  constexpr int kSamples = 24;
  for (std::size_t r = 0; r + 1 < xs.size(); ++r) {
    const double a = xs[r];
    const double b = xs[r + 1];
    if (!(b > a)) continue;
    auto gap = [&](double x) {
      const double y = right_end(x);
      if (!std::isfinite(y)) return std::numeric_limits<double>::quiet_NaN();
      return m.density(x) - m.density(y);
    };
    double prev_x = a + (b - a) / (kSamples + 1);
    double prev_g = gap(prev_x);
    best = std::min(best, length(prev_x));
    for (int i = 2; i <= kSamples; ++i) {
      const double x = a + (b - a) * i / (kSamples + 1);
      const double g = gap(x);
      best = std::min(best, length(x));
      if (std::isfinite(g) && std::isfinite(prev_g) && (g == 0.0 || (g > 0) != (prev_g > 0))) {
        double lo = prev_x;
        double hi = x;
        const bool lo_positive = prev_g > 0;
        for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double gm = gap(mid);
          if (!std::isfinite(gm)) break;
          if ((gm > 0) == lo_positive)
            lo = mid;
          else
            hi = mid;
        }
        best = std::min({best, length(lo), length(hi)});
      }
      prev_x = x;
      prev_g = g;
    }
  }
  return std::max(best, 0.0);
}

TruncationResult truncate_atoms(const Measure1D& m, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("truncate_atoms: eps must lie in (0, 1)");
  double excess = 0.0;
  std::vector<Atom> atoms;
  for (const Atom& a : m.atoms()) {
    excess += std::max(0.0, a.mass - eps);
    atoms.push_back({a.x, std::min(a.mass, eps)});
  }
  const double truncated = 1.0 - excess;
  for (Atom& a : atoms) a.mass /= truncated;
  return {truncated, Measure1D(m.support(), std::move(atoms), scale_pieces(m.pieces(), 1.0 / truncated))};
}

Measure1D affine_map(const Measure1D& m, double scale, double shift) {
  if (!(scale != 0.0) || !std::isfinite(scale) || !std::isfinite(shift))
    throw ParameterError("affine_map: scale must be finite and nonzero");
  const Interval& s = m.support();
  Interval support = scale > 0 ? Interval{scale * s.lo + shift, scale * s.hi + shift}
                               : Interval{scale * s.hi + shift, scale * s.lo + shift};
  std::vector<Atom> atoms;
  for (const Atom& a : m.atoms()) atoms.push_back({scale * a.x + shift, a.mass});
  std::vector<DensityPiece> pieces;
  for (const DensityPiece& p : m.pieces()) pieces.push_back(map_piece(p, scale, shift));
  if (scale < 0) {
    std::reverse(atoms.begin(), atoms.end());
    std::reverse(pieces.begin(), pieces.end());
  }
  return Measure1D(support, std::move(atoms), std::move(pieces));
}

Measure1D affine_rescale(const Measure1D& m, Interval target) {
  if (!(target.hi > target.lo)) throw ParameterError("affine_rescale: target must be nondegenerate");
  const Interval& s = m.support();
  const double scale = target.length() / s.length();
  Measure1D out = affine_map(m, scale, target.lo - scale * s.lo);
  // pin the endpoints exactly
  std::vector<Atom> atoms = out.atoms();
  for (Atom& a : atoms) a.x = std::clamp(a.x, target.lo, target.hi);
  return Measure1D(target, std::move(atoms), out.pieces());
}

Measure1D reflect(const Measure1D& m) { return affine_map(m, -1.0, 0.0); }

// ---------------------------------------------------------------------------
// built-in measures

namespace builtin {

Measure1D uniform(double lo, double hi) {
  if (!(hi > lo)) throw ParameterError("uniform: need lo < hi");
  return Measure1D({lo, hi}, {}, {PolynomialPiece{{lo, hi}, {1.0 / (hi - lo), 0.0, 0.0, 0.0}}});
}

Measure1D two_interval_sigma0() {
  return Measure1D({-1.0, 1.0}, {},
                   {PolynomialPiece{{-1.0, -0.5}, {1.0, 0.0, 0.0, 0.0}},
                    PolynomialPiece{{0.5, 1.0}, {1.0, 0.0, 0.0, 0.0}}});
}

Measure1D truncated_exponential_sigma_k(int k) {
  if (k < 1) throw ParameterError("truncated_exponential_sigma_k: k must be >= 1");
  const double rate = -2.0 * k;
  const double scale = -rate / -std::expm1(rate);
  return Measure1D({0.0, 1.0}, {}, {ExponentialPiece{{0.0, 1.0}, scale, rate}});
}

Measure1D sine_power_weight(int power, double lo, double hi) {
  if (power < 0 || !(hi > lo)) throw ParameterError("sine_power_weight: need power >= 0 and lo < hi");
  if (power == 0) return uniform(0.0, 1.0);
  const double width = hi - lo;
  const double z = sine_power_integral(power, lo, hi) / width;
  if (!(z > 0.0)) throw ParameterError("sine_power_weight: weight has zero mass on the interval");
  return Measure1D({0.0, 1.0}, {}, {SinePowerPiece{{0.0, 1.0}, 1.0 / z, power, width, lo}});
}

Measure1D linear_density(double value_at_0, double value_at_1) {
  const double z = 0.5 * (value_at_0 + value_at_1);
  if (!(z > 0.0)) throw ParameterError("linear_density: density must have positive mass");
  return Measure1D({0.0, 1.0}, {},
                   {PolynomialPiece{{0.0, 1.0}, {value_at_0 / z, (value_at_1 - value_at_0) / z, 0.0, 0.0}}});
}

}  // namespace builtin

}  // namespace chebyquad
