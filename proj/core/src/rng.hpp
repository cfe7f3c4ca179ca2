#ifndef MINCLAIM_SRC_RNG_HPP
#define MINCLAIM_SRC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace minclaim::detail {

// Substream seed derivation.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// mt19937_64 with hand-rolled transforms.  The engine's output sequence is
// fixed by the standard, and none of the transforms below depend on
// library-specific distribution internals, so a seed pins the exact draws on
// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // (0, 1): offset by half an ulp of the lattice so log() stays finite.
  double uniform01_pos() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential() { return -std::log(uniform01_pos()); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double r = std::sqrt(2.0 * exponential());
    double phi = 2.0 * std::numbers::pi * uniform01();
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

  // Marsaglia-Tsang squeeze; a < 1 is boosted through Gamma(a + 1).
  double gamma(double a) {
    if (a < 1.0) {
      return gamma(a + 1.0) * std::pow(uniform01_pos(), 1.0 / a);
    }
    double d = a - 1.0 / 3.0;
    double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
      double x;
      double v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = uniform01_pos();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // One-sided alpha-stable with Laplace transform exp(-s^alpha), 0 < alpha
  // < 1, by Kanter's representation.
  double positive_stable(double alpha) {
    double theta = std::numbers::pi * uniform01_pos();
    double w = exponential();
    double ratio = (1.0 - alpha) / alpha;
    return std::sin(alpha * theta) / std::pow(std::sin(theta), 1.0 / alpha) *
           std::pow(std::sin((1.0 - alpha) * theta) / w, ratio);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace minclaim::detail

#endif  // MINCLAIM_SRC_RNG_HPP
