#pragma once

#include <cstdint>

#include <cmath>

#include "relnav/lie.hpp"

namespace relnav {

/// splitmix64 step: advances the state and returns a mixed 64-bit word.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic per-stream seed derivation; streams for distinct indices are
/// statistically independent.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  const std::uint64_t a = splitmix64_next(s);
  s = a ^ (index * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL);
  return splitmix64_next(s);
}

/// Self-contained generator so output streams are identical across standard
/// libraries and compilers; std::normal_distribution is not pinned by the
/// standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  /// Uniform on (0, 1] with 53-bit resolution; never zero, so safe under log.
  double uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Standard normal via Box-Muller; caches the second deviate.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  Vec3 gaussian_vec3(double sigma) {
    return Vec3(sigma * gaussian(), sigma * gaussian(), sigma * gaussian());
  }

  Vec3 uniform_vec3(double amplitude) {
    return Vec3(uniform(-amplitude, amplitude), uniform(-amplitude, amplitude),
                uniform(-amplitude, amplitude));
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace relnav
