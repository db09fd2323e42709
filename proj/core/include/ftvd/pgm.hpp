#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ftvd/image.hpp"

namespace ftvd {

/// Quantizes to 16 bits: clamp to [0,1], scale to [0,65535], round to nearest.
std::vector<std::uint16_t> quantize16(const Image& u);

/// Binary P5, maxval 65535, big-endian samples.
void write_pgm16(const std::filesystem::path& path, const Image& u);

/// Reads P5 (8- or 16-bit) or P2 and normalizes grey levels to [0,1] by
/// maxval. Non-square images are rejected. Throws Errc::kIo.
Image read_pgm(const std::filesystem::path& path);

}  // namespace ftvd
