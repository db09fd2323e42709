#include "ftvd/shrinkage.hpp"

#include <cmath>

#include "ftvd/error.hpp"

namespace ftvd {

namespace {

void require_positive(double t) {
  if (!(t > 0.0)) throw Error(Errc::kNonpositiveThreshold, "shrinkage threshold must be positive");
}

double soft(double c, double t) {
  const double mag = std::abs(c) - t;
  return mag > 0.0 ? std::copysign(mag, c) : 0.0;
}

}  // namespace

GradientField shrink_iso(const GradientField& v, double t) {
  require_positive(t);
  GradientField out(v.size());
  const auto vx = v.dx().values();
  const auto vy = v.dy().values();
  auto ox = out.dx().values();
  auto oy = out.dy().values();
  for (std::size_t i = 0; i < vx.size(); ++i) {
    const double mag = std::hypot(vx[i], vy[i]);
    if (mag <= t) continue;
    const double scale = (mag - t) / mag;
    ox[i] = scale * vx[i];
    oy[i] = scale * vy[i];
  }
  return out;
}

GradientField shrink_aniso(const GradientField& v, double t) {
  require_positive(t);
  GradientField out(v.size());
  const auto vx = v.dx().values();
  const auto vy = v.dy().values();
  auto ox = out.dx().values();
  auto oy = out.dy().values();
  for (std::size_t i = 0; i < vx.size(); ++i) {
    ox[i] = soft(vx[i], t);
    oy[i] = soft(vy[i], t);
  }
  return out;
}

GradientField shrink(const GradientField& v, double t, TvVariant variant) {
  return variant == TvVariant::kIsotropic ? shrink_iso(v, t) : shrink_aniso(v, t);
}

double tv_norm_sum(const GradientField& g, TvVariant variant) {
  const auto gx = g.dx().values();
  const auto gy = g.dy().values();
  double total = 0.0;
  for (std::size_t i = 0; i < gx.size(); ++i) {
    total += variant == TvVariant::kIsotropic ? std::hypot(gx[i], gy[i]) : std::abs(gx[i]) + std::abs(gy[i]);
  }
  return total;
}

}  // namespace ftvd
