#pragma once

#include <cstdint>
#include <random>

#include "ftvd/grid_ops.hpp"
#include "ftvd/image.hpp"

namespace ftvd {

/// Identifier written into run metadata so traces can be matched to the
/// noise stream that produced them.
inline constexpr const char* kNoiseGeneratorName = "mt19937_64+box-muller-v1";

/// Standard normal samples from std::mt19937_64 via the Box-Muller
/// transform. Both the engine sequence and the transform are fully
/// specified, so a seed yields the same stream on every conforming platform
/// (std::normal_distribution does not give that guarantee).
class GaussianNoise {
 public:
  explicit GaussianNoise(std::uint64_t seed) : engine_(seed) {}

  double next();

 private:
  // Uniform in (0, 1], 53-bit resolution.
  double uniform_open_closed();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// f = K u0 + noise, noise i.i.d. N(0, sigma^2) drawn from GaussianNoise(seed).
/// sigma = 0 returns the blurred image exactly.
Image degrade(const Image& u0, const Kernel& k, double sigma, std::uint64_t seed);

}  // namespace ftvd
