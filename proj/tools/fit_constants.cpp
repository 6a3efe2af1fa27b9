// Fits the partition constants over a parameter grid and prints the JSON
// stored in config/constants.json.
//
//   sphere d:   C >= max(diam/tau, K tau^d),  c <= min mass/tau^d
//   cylinder d: min_L = smallest L in a doubling scan with axis coverage at
//               every tau, doubled; C >= max(diam/tau, K tau^{d-1}/L)
// Margins: C * 1.25 and c * 0.8, rounded outward to three digits.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "chebyquad/cubature_cylinder.hpp"
#include "chebyquad/cubature_sphere.hpp"
#include "chebyquad/error.hpp"
#include "json.hpp"

using namespace chebyquad;

namespace {

// Three significant digits; dividing by an exact power of ten keeps the
// printed value short.
double round_digits(double x, bool up) {
  const int e = 2 - static_cast<int>(std::floor(std::log10(x)));
  const double p = std::pow(10.0, std::abs(e));
  const double scaled = e >= 0 ? x * p : x / p;
  const double m = up ? std::ceil(scaled) : std::floor(scaled);
  return e >= 0 ? m / p : m * p;
}

double round_up(double x) { return round_digits(x, true); }
double round_down(double x) { return round_digits(x, false); }

}  // namespace

int main() {
  const std::vector<double> taus{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  nlohmann::json out;
  for (int d = 1; d <= 3; ++d) {
    double C = 0.0;
    double c = 1e300;
    for (double tau : taus) {
      const CertificateCheck cert = check_certificates(partition_sphere(d, tau), 0.0, 0.0);
      C = std::max({C, cert.max_diameter_ratio, cert.count_ratio});
      c = std::min(c, cert.min_mass_ratio);
    }
    std::fprintf(stderr, "sphere d=%d: max ratio %.4f, min mass ratio %.4f\n", d, C, c);
    out["sphere"][std::to_string(d)] = {{"C", round_up(1.25 * C)}, {"c", round_down(0.8 * c)}};
  }
  for (int d = 3; d <= 4; ++d) {
    const std::vector<double> cyl_taus = d == 3 ? taus : std::vector<double>{0.2, 0.3, 0.5, 0.7, 0.9};
    double min_L = 0.0;
    for (double L = 0.125; L <= 1024.0 && min_L == 0.0; L *= 2.0) {
      bool covered = true;
      for (double tau : cyl_taus) {
        try {
          (void)cylinder_layout({d, 1, L, 1.0, tau, 0.1});
        } catch (const ParameterError&) {
          covered = false;
          break;
        }
      }
      if (covered) min_L = L;
    }
    double C = 0.0;
    for (double L : {2.0 * min_L, 10.0, 20.0}) {
      for (double tau : cyl_taus) {
        const CylinderCubature lay = cylinder_layout({d, 1, L, 1.0, tau, 0.1});
        double diam = 0.0;
        for (const CylinderCell& cell : lay.cells) diam = std::max(diam, cell.diameter_bound);
        const double count = static_cast<double>(lay.cells.size()) * std::pow(tau, d - 1) / L;
        C = std::max({C, diam / tau, count});
      }
    }
    std::fprintf(stderr, "cylinder d=%d: coverage from L=%g, max ratio %.4f\n", d, min_L, C);
    out["cylinder"][std::to_string(d)] = {{"min_L", 2.0 * min_L}, {"C", round_up(1.25 * C)}};
  }
  std::printf("%s\n", out.dump(2).c_str());
  return 0;
}
