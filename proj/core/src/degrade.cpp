#include "ftvd/degrade.hpp"

#include <cmath>
#include <numbers>

#include "ftvd/error.hpp"

namespace ftvd {

double GaussianNoise::uniform_open_closed() {
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianNoise::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open_closed()));
  const double angle = 2.0 * std::numbers::pi * uniform_open_closed();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Image degrade(const Image& u0, const Kernel& k, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw Error(Errc::kInvalidArgument, "noise level must be nonnegative");
  Image f = convolve_periodic(u0, k);
  if (sigma == 0.0) return f;
  GaussianNoise noise(seed);
  for (double& v : f.values()) v += sigma * noise.next();
  return f;
}

}  // namespace ftvd
