// SPDX-License-Identifier: MIT
#pragma once
/// \file rng.hpp
/// \brief Seedable, bit-portable random number generation.
///
/// All randomness in scalekit flows through Rng: a std::mt19937_64 engine
/// (whose output sequence is fixed by the C++ standard) combined with
/// explicit uniform/normal transforms implemented here, because
/// std::*_distribution output is not portable across standard libraries.
/// Independent subtasks (Monte Carlo trials, scan frames) use per-index
/// seeds derived with SplitMix64 so that serial and parallel runs consume
/// identical streams.

#include <cmath>
#include <cstdint>
#include <random>

namespace scalekit {

/// SplitMix64 step; a high-quality 64-bit mixer.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for subtask `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal deviate, Marsaglia's polar method (no trig, portable).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  std::uint64_t next_u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace scalekit
