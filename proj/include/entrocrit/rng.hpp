#pragma once

#include <cstdint>
#include <utility>

#include "entrocrit/complex_matrix.hpp"

namespace entrocrit {

// Bit-mix finalizer used by SplitMix64.
std::uint64_t mix64(std::uint64_t z);

// Derives a well-separated stream seed from (master seed, stream index).
// Used for per-trial streams in sampling campaigns.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index);

// SplitMix64: the state walks by the golden-ratio gamma, outputs pass
// through a 64-bit finalizer. Deterministic; one instance per task.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform in [0, 1) with 53 significant bits.
  double uniform01();
  // Uniform in (0, 1]; safe as a logarithm argument.
  double uniform_open01();
  // Independent standard normals via Box-Muller.
  std::pair<double, double> gaussian_pair();
  // Complex Gaussian with independent N(0,1) real and imaginary parts.
  Complex gaussian_complex();

 private:
  std::uint64_t state_;
};

}  // namespace entrocrit
