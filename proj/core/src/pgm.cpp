#include "ftvd/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

#include "ftvd/error.hpp"

namespace ftvd {

namespace {

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  int ch = 0;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch) != 0) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(ch));
  }
  return token;
}

std::size_t header_number(std::istream& in, const std::filesystem::path& path) {
  const std::string token = next_token(in);
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(c) != 0; })) {
    throw Error(Errc::kIo, "malformed PGM header in " + path.string());
  }
  return std::stoul(token);
}

}  // namespace

std::vector<std::uint16_t> quantize16(const Image& u) {
  std::vector<std::uint16_t> out;
  out.reserve(u.pixels());
  for (double v : u.values()) {
    const double c = std::clamp(v, 0.0, 1.0);
    out.push_back(static_cast<std::uint16_t>(std::lround(c * 65535.0)));
  }
  return out;
}

void write_pgm16(const std::filesystem::path& path, const Image& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot open " + path.string() + " for writing");
  out << "P5\n" << u.size() << ' ' << u.size() << "\n65535\n";
  const auto samples = quantize16(u);
  std::string bytes;
  bytes.reserve(samples.size() * 2);
  for (std::uint16_t s : samples) {
    bytes.push_back(static_cast<char>(s >> 8));
    bytes.push_back(static_cast<char>(s & 0xFF));
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::kIo, "failed writing " + path.string());
}

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open " + path.string());
  const std::string magic = next_token(in);
  if (magic != "P5" && magic != "P2") throw Error(Errc::kIo, path.string() + " is not a PGM (P2/P5) file");
  const std::size_t width = header_number(in, path);
  const std::size_t height = header_number(in, path);
  const std::size_t maxval = header_number(in, path);
  if (width != height) throw Error(Errc::kIo, path.string() + ": only square images are supported");
  if (width < 2) throw Error(Errc::kIo, path.string() + ": image too small");
  if (maxval == 0 || maxval > 65535) throw Error(Errc::kIo, path.string() + ": bad maxval");

  const std::size_t count = width * height;
  std::vector<double> data(count);
  const double scale = 1.0 / static_cast<double>(maxval);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) data[i] = static_cast<double>(header_number(in, path)) * scale;
  } else {
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    std::string raw(count * bytes_per_sample, '\0');
    in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
      throw Error(Errc::kIo, path.string() + ": truncated pixel data");
    }
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t v = static_cast<unsigned char>(raw[i * bytes_per_sample]);
      if (bytes_per_sample == 2) v = (v << 8) | static_cast<unsigned char>(raw[i * 2 + 1]);
      data[i] = static_cast<double>(v) * scale;
    }
  }
  return Image(width, std::move(data));
}

}  // namespace ftvd
