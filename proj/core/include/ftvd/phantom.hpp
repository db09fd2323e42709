#pragma once

#include <cstddef>
#include <cstdint>

#include "ftvd/image.hpp"

namespace ftvd {

/// Synthetic test scene with flat regions, smooth shading and a sinusoidal
/// texture band; grey levels in [0,1]. Deterministic in n.
Image make_phantom(std::size_t n);

/// Flat background with two constant blocks; grey levels in [0,1].
Image make_piecewise_constant_phantom(std::size_t n);

/// A few axis-aligned constant blocks at seeded random positions and levels.
Image make_random_piecewise_constant(std::size_t n, std::uint64_t seed);

}  // namespace ftvd
