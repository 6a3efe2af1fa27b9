#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "chebyquad/momentmap.hpp"

namespace chebyquad {

/// Philox4x32-10 counter-based generator. The 64-bit seed is the key; the
/// stream id fills the upper counter words, the block index the lower ones,
/// so every (seed, stream) pair is an independent, reproducible substream.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr const char* algorithm = "philox4x32-10";

  Philox4x32(std::uint64_t seed, std::uint64_t stream);

  /// The raw bijection: ten rounds applied to counter under key.
  [[nodiscard]] static Block generate(Block counter, Key key);

  std::uint32_t next_u32();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  Key key_;
  Block counter_;
  Block buffer_{};
  int used_ = 4;
};

/// Moments of the uniform probability measure on [-1, 1]^d in basis order:
/// prod_i (alpha_i odd ? 0 : 1/(alpha_i + 1)).
[[nodiscard]] Eigen::VectorXd cube_multimoments(int k, int d);

/// M_k(sigma_n) for n IID uniform points of [-1, 1]^d drawn from rng.
[[nodiscard]] Eigen::VectorXd sample_moment_vector(long long n, const MultiIndexBasis& basis, Philox4x32& rng);
[[nodiscard]] Eigen::VectorXd sample_moment_vector(long long n, int k, int d, Philox4x32& rng);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

inline constexpr double kWilsonZ95 = 1.959964;

[[nodiscard]] WilsonInterval wilson_interval(long long hits, long long trials, double z = kWilsonZ95);

/// sqrt(n) ||M_k(sigma_n) - M_k(sigma)||_inf for each repetition; repetition r
/// draws from stream r of the seed, so the result does not depend on threads.
[[nodiscard]] std::vector<double> small_ball_distances(long long n, int k, int d, long long reps,
                                                       std::uint64_t seed, unsigned threads = 0);

struct SmallBallEstimate {
  long long n = 0;
  int k = 0;
  int d = 0;
  double eps = 0.0;
  long long repetitions = 0;
  long long hit_count = 0;
  double estimate = 0.0;
  WilsonInterval ci;
  std::uint64_t seed = 0;
  double nearest_miss = 0.0;  // smallest sqrt(n)||.||_inf among misses, or 0 when none
};

[[nodiscard]] SmallBallEstimate small_ball_probability(long long n, int k, int d, double eps, long long reps,
                                                       std::uint64_t seed, unsigned threads = 0);

/// Estimates at several eps from one set of draws (common random numbers).
[[nodiscard]] std::vector<SmallBallEstimate> small_ball_curve(long long n, int k, int d,
                                                              const std::vector<double>& eps, long long reps,
                                                              std::uint64_t seed, unsigned threads = 0);

/// Volume of the Euclidean ball of the given radius in R^dim.
[[nodiscard]] double ball_volume(int dim, double radius);

struct DensityProbe {
  long long n = 0;
  int k = 0;
  int d = 0;
  int dimension = 0;  // D(k, d)
  double bin_radius = 0.0;
  long long repetitions = 0;
  long long hits = 0;
  double estimate = 0.0;
  WilsonInterval ci;  // already divided by the ball volume
  std::uint64_t seed = 0;
};

/// Fraction of repetitions with |sqrt(n)(M_k(sigma_n) - M_k(sigma))|_2 <= bin_radius,
/// divided by the ball volume.
[[nodiscard]] DensityProbe empirical_density_probe(long long n, int k, int d, long long reps, double bin_radius,
                                                   std::uint64_t seed, unsigned threads = 0);

struct MomentStatistics {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;  // sample standard deviation per coordinate
  long long repetitions = 0;
};

/// Per-coordinate mean and spread of M_k(sigma_n) over repetitions.
[[nodiscard]] MomentStatistics moment_statistics(long long n, int k, int d, long long reps, std::uint64_t seed,
                                                 unsigned threads = 0);

}  // namespace chebyquad
