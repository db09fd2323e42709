#include "ftvd/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ftvd {

namespace {

void fill_block(Image& u, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1, double value) {
  for (std::size_t r = r0; r < r1; ++r) {
    for (std::size_t c = c0; c < c1; ++c) u(r, c) = value;
  }
}

}  // namespace

Image make_phantom(std::size_t n) {
  const double side = static_cast<double>(n);
  Image u(n, 0.25);

  // Shading: horizontal ramp over the upper-left region.
  for (std::size_t r = n / 16; r < n / 2; ++r) {
    for (std::size_t c = n / 16; c < n / 2; ++c) {
      const double t = (static_cast<double>(c) - side / 16.0) / (side * 7.0 / 16.0);
      u(r, c) = 0.15 + 0.7 * t;
    }
  }

  // Smooth radial bump on the right.
  const double cr = side * 0.3;
  const double cc = side * 0.75;
  const double radius = side * 0.2;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = n / 2; c < n; ++c) {
      const double d = std::hypot(static_cast<double>(r) - cr, static_cast<double>(c) - cc) / radius;
      if (d < 1.0) u(r, c) = 0.25 + 0.55 * 0.5 * (1.0 + std::cos(std::numbers::pi * d));
    }
  }

  // Flat shapes: a bright block and a dark disk.
  fill_block(u, n * 9 / 16, n * 11 / 16, n / 8, n * 7 / 16, 0.85);
  const double dr = side * 0.625;
  const double dc = side * 0.7;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (std::hypot(static_cast<double>(r) - dr, static_cast<double>(c) - dc) < side * 0.1) u(r, c) = 0.05;
    }
  }

  // Texture band near the bottom.
  const double period = std::max(4.0, side / 16.0);
  for (std::size_t r = n * 3 / 4; r < n * 7 / 8; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      u(r, c) = 0.5 + 0.3 * std::sin(2.0 * std::numbers::pi * static_cast<double>(c) / period);
    }
  }
  return u;
}

Image make_piecewise_constant_phantom(std::size_t n) {
  Image u(n, 0.2);
  fill_block(u, n / 4, n * 3 / 4, n / 8, n / 2, 0.8);
  fill_block(u, n / 2, n * 7 / 8, n * 5 / 8, n * 7 / 8, 0.5);
  return u;
}

Image make_random_piecewise_constant(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> coord(0, n - 1);
  std::uniform_real_distribution<double> level(0.0, 1.0);
  Image u(n, level(rng));
  for (int block = 0; block < 3; ++block) {
    std::size_t r0 = coord(rng);
    std::size_t r1 = coord(rng);
    std::size_t c0 = coord(rng);
    std::size_t c1 = coord(rng);
    if (r0 > r1) std::swap(r0, r1);
    if (c0 > c1) std::swap(c0, c1);
    fill_block(u, r0, r1 + 1, c0, c1 + 1, level(rng));
  }
  return u;
}

}  // namespace ftvd
