#pragma once

// Test-only reference implementations. These deliberately avoid the library
// code paths they are used to check.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace fsc::oracle {

/// Brute-force wrap: add or subtract whole periods until the value is in
/// [lo, lo + period).
inline double wrap(double v, double lo, double period) {
  long double x = v;
  while (x < lo) x += period;
  while (x >= lo + period) x -= period;
  return static_cast<double>(x);
}

/// min over k in [-k_max, k_max] of |a - b + k * period|.
inline double distance(double a, double b, double period, int k_max = 8) {
  long double best = std::numeric_limits<long double>::infinity();
  for (int k = -k_max; k <= k_max; ++k) {
    const long double d = std::fabs(static_cast<long double>(a) - b + static_cast<long double>(k) * period);
    if (d < best) best = d;
  }
  return static_cast<double>(best);
}

/// Seeded generator for hand-rolled property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal(double sigma) { return std::normal_distribution<double>(0.0, sigma)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

/// 0.01 degree grid of [-90, 90): 18,000 angles in radians.
inline std::vector<double> centidegree_grid() {
  std::vector<double> out;
  out.reserve(18000);
  for (int i = 0; i < 18000; ++i) {
    out.push_back(static_cast<double>((static_cast<long double>(i) * 0.01L - 90.0L) * 3.14159265358979323846264338327950288L / 180.0L));
  }
  return out;
}

}  // namespace fsc::oracle
