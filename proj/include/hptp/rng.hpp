#pragma once

#include "hptp/types.hpp"

#include <cmath>
#include <cstdint>

namespace hptp {

/// Counter-based generator (SplitMix64 core). Every draw is a pure function
/// of (seed, counter), so streams are reproducible across platforms and safe
/// to fork with split(). Normal variates come from Box-Muller.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - next_double();  // (0, 1]
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  Complex next_complex_normal() {
    const double re = next_normal();
    const double im = next_normal();
    return Complex(re, im) / std::sqrt(2.0);
  }

  /// Independent child stream; the constant is an arbitrary odd mixer.
  Rng split(std::uint64_t stream) const {
    return Rng(state_ ^ (0xD1B54A32D192ED03ull * (stream + 1)));
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace hptp
