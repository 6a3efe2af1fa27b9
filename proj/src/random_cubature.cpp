#include "chebyquad/random_cubature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chebyquad/error.hpp"
#include "chebyquad/parallel.hpp"

namespace chebyquad {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(p);
  hi = static_cast<std::uint32_t>(p >> 32);
}

void check_args(long long n, int k, int d, long long reps) {
  if (n < 1) throw ParameterError("random cubature: n must be >= 1");
  if (k < 1 || d < 1) throw ParameterError("random cubature: k and d must be >= 1");
  if (reps < 1) throw ParameterError("random cubature: reps must be >= 1");
}

// Deviation vectors sqrt(n)(M_k(sigma_n) - M_k(sigma)), one per repetition,
// reduced on the fly by `reduce(rep, deviation)`.
template <class Reduce>
void for_each_deviation(long long n, int k, int d, long long reps, std::uint64_t seed, unsigned threads,
                        Reduce&& reduce) {
  const MultiIndexBasis basis(k, d);
  const Eigen::VectorXd exact = cube_multimoments(k, d);
  const double root_n = std::sqrt(static_cast<double>(n));
  parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t r) {
    Philox4x32 rng(seed, r);
    const Eigen::VectorXd dev = root_n * (sample_moment_vector(n, basis, rng) - exact);
    reduce(r, dev);
  });
}

}  // namespace

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      counter_{0u, 0u, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

Philox4x32::Block Philox4x32::generate(Block ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kMul0, ctr[0], lo0, hi0);
    mulhilo(kMul1, ctr[2], lo1, hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint32_t Philox4x32::next_u32() {
  if (used_ == 4) {
    buffer_ = generate(counter_, key_);
    if (++counter_[0] == 0) ++counter_[1];
    used_ = 0;
  }
  return buffer_[used_++];
}

double Philox4x32::uniform01() {
  const std::uint64_t hi = next_u32() >> 5;  // 27 bits
  const std::uint64_t lo = next_u32() >> 6;  // 26 bits
  return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
}

Eigen::VectorXd cube_multimoments(int k, int d) {
  const MultiIndexBasis basis(k, d);
  Eigen::VectorXd out(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double v = 1.0;
    for (int a : basis[i]) v *= (a % 2 == 1) ? 0.0 : 1.0 / (a + 1);
    out(static_cast<Eigen::Index>(i)) = v;
  }
  return out;
}

Eigen::VectorXd sample_moment_vector(long long n, const MultiIndexBasis& basis, Philox4x32& rng) {
  const int d = basis.d();
  const int k = basis.k();
  const std::size_t D = basis.size();
  std::vector<double> sum(D, 0.0);
  std::vector<double> powers(static_cast<std::size_t>(d) * (k + 1));
  for (long long i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      const double x = rng.uniform(-1.0, 1.0);
      double* row = &powers[static_cast<std::size_t>(j) * (k + 1)];
      row[0] = 1.0;
      for (int a = 1; a <= k; ++a) row[a] = row[a - 1] * x;
    }
    for (std::size_t b = 0; b < D; ++b) {
      const std::vector<int>& alpha = basis[b];
      double v = 1.0;
      for (int j = 0; j < d; ++j) v *= powers[static_cast<std::size_t>(j) * (k + 1) + alpha[j]];
      sum[b] += v;
    }
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(D));
  for (std::size_t b = 0; b < D; ++b) out(static_cast<Eigen::Index>(b)) = sum[b] / static_cast<double>(n);
  return out;
}

Eigen::VectorXd sample_moment_vector(long long n, int k, int d, Philox4x32& rng) {
  check_args(n, k, d, 1);
  return sample_moment_vector(n, MultiIndexBasis(k, d), rng);
}

WilsonInterval wilson_interval(long long hits, long long trials, double z) {
  if (trials < 1 || hits < 0 || hits > trials) throw ParameterError("wilson_interval: need 0 <= hits <= trials");
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / nt;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * nt)) / (1 + z2 / nt);
  const double half = z / (1 + z2 / nt) * std::sqrt(p * (1 - p) / nt + z2 / (4 * nt * nt));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::vector<double> small_ball_distances(long long n, int k, int d, long long reps, std::uint64_t seed,
                                         unsigned threads) {
  check_args(n, k, d, reps);
  std::vector<double> out(static_cast<std::size_t>(reps));
  for_each_deviation(n, k, d, reps, seed, threads,
                     [&](std::size_t r, const Eigen::VectorXd& dev) { out[r] = dev.cwiseAbs().maxCoeff(); });
  return out;
}

std::vector<SmallBallEstimate> small_ball_curve(long long n, int k, int d, const std::vector<double>& eps,
                                                long long reps, std::uint64_t seed, unsigned threads) {
  const std::vector<double> dist = small_ball_distances(n, k, d, reps, seed, threads);
  std::vector<SmallBallEstimate> out;
  for (double e : eps) {
    if (!(e > 0.0)) throw ParameterError("small_ball_probability: eps must be > 0");
    SmallBallEstimate s;
    s.n = n;
    s.k = k;
    s.d = d;
    s.eps = e;
    s.repetitions = reps;
    s.seed = seed;
    double miss = std::numeric_limits<double>::infinity();
    for (double x : dist) {
      if (x <= e) ++s.hit_count;
      else miss = std::min(miss, x);
    }
    s.nearest_miss = std::isfinite(miss) ? miss : 0.0;
    s.estimate = static_cast<double>(s.hit_count) / static_cast<double>(reps);
    s.ci = wilson_interval(s.hit_count, reps);
    out.push_back(s);
  }
  return out;
}

SmallBallEstimate small_ball_probability(long long n, int k, int d, double eps, long long reps, std::uint64_t seed,
                                         unsigned threads) {
  return small_ball_curve(n, k, d, {eps}, reps, seed, threads).front();
}

double ball_volume(int dim, double radius) {
  if (dim < 1) throw ParameterError("ball_volume: dimension must be >= 1");
  const double half = 0.5 * dim;
  return std::exp(half * std::log(std::numbers::pi) - std::lgamma(half + 1.0) + dim * std::log(radius));
}

DensityProbe empirical_density_probe(long long n, int k, int d, long long reps, double bin_radius,
                                     std::uint64_t seed, unsigned threads) {
  check_args(n, k, d, reps);
  if (!(bin_radius > 0.0)) throw ParameterError("empirical_density_probe: bin_radius must be > 0");
  std::vector<char> hit(static_cast<std::size_t>(reps), 0);
  for_each_deviation(n, k, d, reps, seed, threads,
                     [&](std::size_t r, const Eigen::VectorXd& dev) { hit[r] = dev.norm() <= bin_radius; });
  DensityProbe p;
  p.n = n;
  p.k = k;
  p.d = d;
  p.dimension = static_cast<int>(moment_dimension(k, d));
  p.bin_radius = bin_radius;
  p.repetitions = reps;
  p.seed = seed;
  p.hits = std::count(hit.begin(), hit.end(), 1);
  const double vol = ball_volume(p.dimension, bin_radius);
  p.estimate = static_cast<double>(p.hits) / static_cast<double>(reps) / vol;
  const WilsonInterval w = wilson_interval(p.hits, reps);
  p.ci = {w.lo / vol, w.hi / vol};
  return p;
}

MomentStatistics moment_statistics(long long n, int k, int d, long long reps, std::uint64_t seed,
                                   unsigned threads) {
  check_args(n, k, d, reps);
  const MultiIndexBasis basis(k, d);
  const auto D = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd samples(D, reps);
  parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t r) {
    Philox4x32 rng(seed, r);
    samples.col(static_cast<Eigen::Index>(r)) = sample_moment_vector(n, basis, rng);
  });
  MomentStatistics s;
  s.repetitions = reps;
  s.mean = samples.rowwise().mean();
  s.stddev = Eigen::VectorXd::Zero(D);
  if (reps > 1) {
    const Eigen::MatrixXd centred = samples.colwise() - s.mean;
    s.stddev = (centred.rowwise().squaredNorm() / static_cast<double>(reps - 1)).cwiseSqrt();
  }
  return s;
}

}  // namespace chebyquad
