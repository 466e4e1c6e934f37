#pragma once

#include <cstdint>
#include <span>

#include "melseq/errors.hpp"

namespace melseq {

// SplitMix64: tiny seedable generator with bit-exact behavior on every
// platform. All distribution draws go through next_double() (53-bit
// mantissa) so sequences are reproducible across compilers and OSes.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  int uniform_int(int n) {
    int v = static_cast<int>(next_double() * static_cast<double>(n));
    return v < n ? v : n - 1;
  }

  // Inverse-CDF draw from a probability vector (need not be exactly
  // normalized; the tail index absorbs rounding).
  int categorical(std::span<const double> probs) {
    double u = next_double();
    double acc = 0.0;
    for (size_t i = 0; i + 1 < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
  }

 private:
  uint64_t state_;
};

}  // namespace melseq
