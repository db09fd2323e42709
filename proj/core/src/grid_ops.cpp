#include "ftvd/grid_ops.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ftvd/error.hpp"

namespace ftvd {

namespace {

std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

void require_fits(const Image& u, const Kernel& k) {
  if (k.size() > u.size()) {
    throw Error(Errc::kKernelTooLarge, "kernel of size " + std::to_string(k.size()) +
                                           " exceeds image of size " + std::to_string(u.size()));
  }
}

// sign = +1 convolves, sign = -1 correlates.
Image filter_periodic(const Image& u, const Kernel& k, int sign) {
  require_fits(u, k);
  const std::size_t n = u.size();
  const auto m = static_cast<std::ptrdiff_t>(k.size());
  const auto h = static_cast<std::ptrdiff_t>(k.anchor());
  Image out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      double acc = 0.0;
      for (std::ptrdiff_t a = 0; a < m; ++a) {
        const std::size_t rr = wrap(static_cast<std::ptrdiff_t>(r) - sign * (a - h), n);
        for (std::ptrdiff_t b = 0; b < m; ++b) {
          const std::size_t cc = wrap(static_cast<std::ptrdiff_t>(c) - sign * (b - h), n);
          acc += k(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) * u(rr, cc);
        }
      }
      out(r, c) = acc;
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

template <typename T>
T parse_number(const std::string& s) {
  T value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) throw Error(Errc::kBadSpec, "not a number: '" + s + "'");
  return value;
}

}  // namespace

Kernel::Kernel(std::size_t size, std::vector<double> taps) : size_(size), taps_(std::move(taps)) {
  if (size_ == 0 || size_ % 2 == 0) throw Error(Errc::kBadSpec, "kernel size must be odd");
  if (taps_.size() != size_ * size_) throw Error(Errc::kBadSpec, "kernel needs size*size taps");
}

double Kernel::sum() const noexcept { return std::accumulate(taps_.begin(), taps_.end(), 0.0); }

Kernel make_kernel(const KernelSpec& spec) {
  struct Visitor {
    Kernel operator()(const kernel_spec::Average& s) const {
      if (s.size == 0 || s.size % 2 == 0) throw Error(Errc::kBadSpec, "average kernel size must be odd");
      const double tap = 1.0 / static_cast<double>(s.size * s.size);
      return Kernel(s.size, std::vector<double>(s.size * s.size, tap));
    }
    Kernel operator()(const kernel_spec::Gaussian& s) const {
      if (s.size == 0 || s.size % 2 == 0) throw Error(Errc::kBadSpec, "gaussian kernel size must be odd");
      if (!(s.sigma > 0.0)) throw Error(Errc::kBadSpec, "gaussian width must be positive");
      const auto h = static_cast<double>(s.size / 2);
      std::vector<double> taps(s.size * s.size);
      double total = 0.0;
      for (std::size_t r = 0; r < s.size; ++r) {
        for (std::size_t c = 0; c < s.size; ++c) {
          const double y = static_cast<double>(r) - h;
          const double x = static_cast<double>(c) - h;
          const double v = std::exp(-(x * x + y * y) / (2.0 * s.sigma * s.sigma));
          taps[r * s.size + c] = v;
          total += v;
        }
      }
      for (double& v : taps) v /= total;
      return Kernel(s.size, std::move(taps));
    }
    Kernel operator()(const kernel_spec::Delta&) const { return Kernel(1, {1.0}); }
  };
  return std::visit(Visitor{}, spec);
}

KernelSpec parse_kernel_spec(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw Error(Errc::kBadSpec, "empty kernel spec");
  if (parts[0] == "delta" && parts.size() == 1) return kernel_spec::Delta{};
  if (parts[0] == "average" && parts.size() == 2) {
    return kernel_spec::Average{parse_number<std::size_t>(parts[1])};
  }
  if (parts[0] == "gaussian" && parts.size() == 3) {
    return kernel_spec::Gaussian{parse_number<std::size_t>(parts[1]), parse_number<double>(parts[2])};
  }
  throw Error(Errc::kBadSpec, "unrecognized kernel spec '" + text + "'");
}

std::string to_string(const KernelSpec& spec) {
  struct Visitor {
    std::string operator()(const kernel_spec::Average& s) const { return "average:" + std::to_string(s.size); }
    std::string operator()(const kernel_spec::Gaussian& s) const {
      std::ostringstream os;
      os << "gaussian:" << s.size << ':' << s.sigma;
      return os.str();
    }
    std::string operator()(const kernel_spec::Delta&) const { return "delta"; }
  };
  return std::visit(Visitor{}, spec);
}

GradientField forward_diff(const Image& u) {
  const std::size_t n = u.size();
  GradientField g(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t rn = (r + 1 == n) ? 0 : r + 1;
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t cn = (c + 1 == n) ? 0 : c + 1;
      g.dx()(r, c) = u(r, cn) - u(r, c);
      g.dy()(r, c) = u(rn, c) - u(r, c);
    }
  }
  return g;
}

Image divergence_adjoint(const GradientField& g) {
  const std::size_t n = g.size();
  Image out(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t rp = (r == 0) ? n - 1 : r - 1;
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t cp = (c == 0) ? n - 1 : c - 1;
      out(r, c) = (g.dx()(r, cp) - g.dx()(r, c)) + (g.dy()(rp, c) - g.dy()(r, c));
    }
  }
  return out;
}

Image convolve_periodic(const Image& u, const Kernel& k) { return filter_periodic(u, k, +1); }

Image correlate_periodic(const Image& u, const Kernel& k) { return filter_periodic(u, k, -1); }

Image cyclic_shift(const Image& u, std::ptrdiff_t dr, std::ptrdiff_t dc) {
  const std::size_t n = u.size();
  Image out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      out(r, c) = u(wrap(static_cast<std::ptrdiff_t>(r) - dr, n), wrap(static_cast<std::ptrdiff_t>(c) - dc, n));
    }
  }
  return out;
}

}  // namespace ftvd
