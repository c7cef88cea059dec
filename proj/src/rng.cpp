#include "entrocrit/rng.hpp"

#include <cmath>
#include <numbers>

namespace entrocrit {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed + kGoldenGamma) ^ mix64(index + 1));
}

std::uint64_t SplitMix64::next() { return mix64(state_ += kGoldenGamma); }

double SplitMix64::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform_open01() {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

std::pair<double, double> SplitMix64::gaussian_pair() {
  const double u1 = uniform_open01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

Complex SplitMix64::gaussian_complex() {
  const auto [re, im] = gaussian_pair();
  return Complex(re, im);
}

}  // namespace entrocrit
