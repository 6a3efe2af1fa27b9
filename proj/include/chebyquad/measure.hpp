#pragma once

#include <array>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "chebyquad/gauss_legendre.hpp"

namespace chebyquad {

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  [[nodiscard]] double length() const { return hi - lo; }
  [[nodiscard]] bool contains(double x, double tol = 0.0) const {
    return x >= lo - tol && x <= hi + tol;
  }
};

struct Atom {
  double x = 0.0;
  double mass = 0.0;
};

// Density pieces are stored in the local coordinate t = x - interval.lo.

/// density(t) = c0 + c1 t + c2 t^2 + c3 t^3
struct PolynomialPiece {
  Interval interval;
  std::array<double, 4> coeffs{};
};

/// density(t) = scale * exp(rate * t)
struct ExponentialPiece {
  Interval interval;
  double scale = 1.0;
  double rate = 0.0;
};

/// density(t) = scale * sin(freq * t + phase)^power
struct SinePowerPiece {
  Interval interval;
  double scale = 1.0;
  int power = 0;
  double freq = 1.0;
  double phase = 0.0;
};

using DensityPiece = std::variant<PolynomialPiece, ExponentialPiece, SinePowerPiece>;

[[nodiscard]] const Interval& piece_interval(const DensityPiece& piece);
/// Density at a global coordinate inside the piece.
[[nodiscard]] double piece_density(const DensityPiece& piece, double x);
/// Mass of the piece over [interval.lo, x], x clamped to the interval.
[[nodiscard]] double piece_cdf(const DensityPiece& piece, double x);
[[nodiscard]] double piece_mass(const DensityPiece& piece);
[[nodiscard]] double piece_max_density(const DensityPiece& piece);
/// Integral of x^j against the piece density.
[[nodiscard]] double piece_moment(const DensityPiece& piece, int j);

/// Probability measure on a bounded interval: atoms plus a piecewise density.
/// Immutable once constructed; the constructor validates every invariant and
/// throws ValidationError naming the first one violated.
class Measure1D {
 public:
  Measure1D(Interval support, std::vector<Atom> atoms, std::vector<DensityPiece> pieces);

  [[nodiscard]] const Interval& support() const { return support_; }
  [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
  [[nodiscard]] const std::vector<DensityPiece>& pieces() const { return pieces_; }

  /// Total mass as summed from the parts (1 within 1e-12 after validation).
  [[nodiscard]] double total_mass() const { return total_mass_; }
  [[nodiscard]] double max_atom_mass() const;
  /// Mass of the atom at exactly x, or 0.
  [[nodiscard]] double atom_mass_at(double x) const;
  /// Density of the absolutely continuous part (right-continuous at piece ends).
  [[nodiscard]] double density(double x) const;
  /// Essential sup of the density; empty when the measure has atoms.
  [[nodiscard]] std::optional<double> density_bound() const;
  /// sigma([a, x)).
  [[nodiscard]] double cdf_left(double x) const;
  /// inf{x : cdf(x) > p}.
  [[nodiscard]] double upper_quantile(double p) const;
  /// Positions where the density may jump or atoms sit, ascending, unique.
  [[nodiscard]] std::vector<double> breakpoints() const;

  /// Integrate f against the measure. Polynomial pieces are integrated with a
  /// Gauss-Legendre rule of `order` points (exact for polynomial f of degree
  /// <= 2*order - 4); analytic pieces use a composite rule.
  template <class F>
  [[nodiscard]] double integrate(F&& f, int order = 32) const;

  friend double cdf(const Measure1D& m, double x);
  friend double quantile(const Measure1D& m, double p);

 private:
  // Atoms and density spans (pieces split at interior atoms) in ascending
  // position; cumulative mass before each event is cached.
  struct Event {
    bool is_atom = false;
    double lo = 0.0;
    double hi = 0.0;
    double mass = 0.0;
    double cum_before = 0.0;
    std::size_t piece = 0;
  };

  void validate() const;
  void build_events();

  Interval support_;
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
  std::vector<Event> events_;
  double total_mass_ = 0.0;
};

/// Result of capping every atom at mass eps.
struct TruncationResult {
  double truncated_mass = 1.0;
  Measure1D normalized;
};

/// sigma([a, x]) including the atom at x; 0 left of the support.
[[nodiscard]] double cdf(const Measure1D& m, double x);
/// min{ y : cdf(m, y) >= p } for p in (0, 1].
[[nodiscard]] double quantile(const Measure1D& m, double p);
/// Exact moment int x^j dm.
[[nodiscard]] double moment(const Measure1D& m, int j);
/// Minimal length of a closed interval carrying mass >= delta.
[[nodiscard]] double inverse_modulus(const Measure1D& m, double delta);
[[nodiscard]] TruncationResult truncate_atoms(const Measure1D& m, double eps);
/// Pushforward under x -> scale * x + shift (scale may be negative).
[[nodiscard]] Measure1D affine_map(const Measure1D& m, double scale, double shift);
/// Pushforward under the increasing affine map of the support onto target.
[[nodiscard]] Measure1D affine_rescale(const Measure1D& m, Interval target);
/// Pushforward under x -> -x.
[[nodiscard]] Measure1D reflect(const Measure1D& m);
/// int_lo^hi sin(theta)^power dtheta in closed form.
[[nodiscard]] double sine_power_integral(int power, double lo, double hi);
/// Copies of the pieces with every density multiplied by `factor`.
[[nodiscard]] std::vector<DensityPiece> scale_pieces(std::span<const DensityPiece> pieces,
                                                     double factor);

namespace builtin {
/// Uniform density on [lo, hi].
[[nodiscard]] Measure1D uniform(double lo = 0.0, double hi = 1.0);
/// Uniform on [-1,-1/2] u [1/2,1].
[[nodiscard]] Measure1D two_interval_sigma0();
/// Exponential density proportional to exp(-2 k x) on [0, 1].
[[nodiscard]] Measure1D truncated_exponential_sigma_k(int k);
/// Density proportional to sin(theta)^power on [lo, hi] with 0 <= lo < hi <= pi
/// (power = 0 gives the uniform density), rescaled to the support [0, 1].
[[nodiscard]] Measure1D sine_power_weight(int power, double lo, double hi);
/// Density proportional to value_at_0 + (value_at_1 - value_at_0) t on [0, 1].
[[nodiscard]] Measure1D linear_density(double value_at_0, double value_at_1);
}  // namespace builtin

// ---------------------------------------------------------------------------

template <class F>
double Measure1D::integrate(F&& f, int order) const {
  double sum = 0.0;
  for (const Atom& a : atoms_) sum += a.mass * f(a.x);
  for (const DensityPiece& piece : pieces_) {
    const Interval& iv = piece_interval(piece);
    auto integrand = [&](double x) { return f(x) * piece_density(piece, x); };
    if (std::holds_alternative<PolynomialPiece>(piece))
      sum += integrate_gl(integrand, iv.lo, iv.hi, order);
    else
      sum += integrate_gl_composite(integrand, iv.lo, iv.hi, order, 8);
  }
  return sum;
}

}  // namespace chebyquad
