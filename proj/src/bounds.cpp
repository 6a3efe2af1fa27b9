#include "chebyquad/bounds.hpp"

#include <cmath>
#include <numbers>

#include "chebyquad/error.hpp"
#include "chebyquad/orthopoly.hpp"
#include "chebyquad/quadrature.hpp"

namespace chebyquad {

namespace {

constexpr double e = std::numbers::e;

}  // namespace

double density_upper_bound(int k, double M) {
  if (k < 1 || !(M > 0.0)) throw ParameterError("density_upper_bound: need k >= 1 and M > 0");
  return std::ceil(75.0 * std::pow(e, 4) * k * M * std::pow(12.0 * e * M, k - 1));
}

UpperBoundReport upper_bound(const Measure1D& m, int k, std::optional<PowerLawModulus> modulus) {
  if (m.support().lo < -1e-12 || m.support().hi > 1.0 + 1e-12)
    throw ParameterError("upper_bound: the measure must be supported in [0, 1]");
  const GuaranteeParameters tp = guarantee_parameters(m, k);
  UpperBoundReport rep;
  rep.k = k;
  rep.rho = tp.rho;
  rep.r = tp.r;
  rep.n_guaranteed = tp.n_required;
  if (!(tp.rho > 0.0)) {
    rep.large_atom_referral = true;
    rep.note = "an atom carries mass >= 1/(k+3), so rho = 0; use the large-atom construction (--eps)";
  }
  if (auto M = m.density_bound(); M && *M > 0.0) {
    rep.density_sup = *M;
    rep.density_bound = density_upper_bound(k, *M);
  }
  if (modulus) {
    if (!(modulus->c > 0.0)) throw ParameterError("upper_bound: modulus constant c must be > 0");
    const double rho = (k - 1) * modulus->c * std::pow(1.0 / (k + 3), modulus->beta);
    rep.beta_bound = std::ceil(1.0 / r_from_rho(rho, k));
  }
  return rep;
}

double lower_bound_moments(const Measure1D& m, int k) {
  if (k < 3 || k % 2 == 0) throw ParameterError("lower_bound_moments: k must be an odd integer >= 3");
  if (m.atom_mass_at(0.0) >= 1.0 - 1e-12) throw DomainError("lower_bound_moments: the measure is delta_0");
  double mk = moment(m, k);
  const double mk1 = moment(m, k - 1);
  if (mk == 0.0) return 1.0;
  if (mk < 0.0) mk = -mk;  // reflection through 0 flips odd moments only
  if (!(mk1 > 0.0)) throw DomainError("lower_bound_moments: vanishing even moment");
  double value = std::pow(mk, k - 1) / std::pow(mk1, k);
  if (!std::isfinite(value) || value == 0.0)
    value = std::exp((k - 1) * std::log(mk) - k * std::log(mk1));
  return std::max(1.0, value);
}

TranslatedBound lower_bound_moments_translated(const Measure1D& m, int k, std::span<const double> shifts) {
  TranslatedBound best{lower_bound_moments(m, k), 0.0};
  for (double s : shifts) {
    if (s == 0.0) continue;
    const Measure1D shifted = affine_map(m, 1.0, s);
    if (shifted.atom_mass_at(0.0) >= 1.0 - 1e-12) continue;
    const double b = lower_bound_moments(shifted, k);
    if (b > best.bound) best = {b, s};
  }
  return best;
}

double lower_bound_bernstein(const Measure1D& m, int mth) {
  if (mth < 1) throw ParameterError("lower_bound_bernstein: m must be >= 1");
  if (m.pieces().empty() && static_cast<int>(m.atoms().size()) < mth)
    throw DomainError("lower_bound_bernstein: purely atomic measure with fewer than m atoms");
  GaussRule rule;
  try {
    rule = gauss_rule(m, mth);
  } catch (const NumericalError& err) {
    throw NumericalError(std::string(err.what()) + "; try m <= " + std::to_string(std::max(1, mth - 1)));
  } catch (const ParameterError& err) {
    throw NumericalError(std::string(err.what()) + "; try m <= " + std::to_string(kMaxGaussOrder));
  }
  return 1.0 / std::min(rule.weights.front(), rule.weights.back());
}

LowerBoundReport lower_bound(const Measure1D& m, int k) {
  if (k < 1) throw ParameterError("lower_bound: k must be >= 1");
  LowerBoundReport rep;
  rep.k = k;
  const int odd = (k % 2 == 1) ? k : k - 1;
  if (odd >= 3) {
    rep.moment_bound = lower_bound_moments(m, odd);
    if (odd != k) rep.note = "moment bound evaluated at k-1 (odd); the node count is monotone in k";
  }
  const int mth = (odd + 1) / 2;
  if (mth <= kMaxGaussOrder) {
    try {
      rep.bernstein_bound = lower_bound_bernstein(m, mth);
      rep.m = mth;
    } catch (const Error& err) {
      rep.note += (rep.note.empty() ? "" : "; ") + std::string("Bernstein bound unavailable: ") + err.what();
    }
  }
  return rep;
}

GaussianWeightCheck gaussian_weight_check(const Measure1D& m, int mth, std::optional<double> M) {
  if (!M) M = m.density_bound();
  if (!M || !(*M > 0.0)) throw ParameterError("gaussian_weight_check: a density bound M is required");
  const GaussRule rule = gauss_rule(m, mth);
  GaussianWeightCheck out;
  out.lambda1 = rule.weights.front();
  out.rhs = 1.0 / density_upper_bound(2 * mth - 1, *M);
  out.holds = out.lambda1 >= out.rhs;
  return out;
}

}  // namespace chebyquad
