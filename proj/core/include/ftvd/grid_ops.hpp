#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ftvd/image.hpp"

namespace ftvd {

/// Odd-sized square convolution kernel with the anchor at its center tap.
class Kernel {
 public:
  Kernel(std::size_t size, std::vector<double> taps);

  std::size_t size() const noexcept { return size_; }
  std::size_t anchor() const noexcept { return size_ / 2; }
  double operator()(std::size_t row, std::size_t col) const noexcept { return taps_[row * size_ + col]; }
  const std::vector<double>& taps() const noexcept { return taps_; }
  double sum() const noexcept;

 private:
  std::size_t size_;
  std::vector<double> taps_;
};

namespace kernel_spec {
struct Average {
  std::size_t size;
};
struct Gaussian {
  std::size_t size;
  double sigma;
};
struct Delta {};
}  // namespace kernel_spec

using KernelSpec = std::variant<kernel_spec::Average, kernel_spec::Gaussian, kernel_spec::Delta>;

/// Builds a flux-1 blur kernel. Throws Errc::kBadSpec on even sizes or a
/// nonpositive Gaussian width.
Kernel make_kernel(const KernelSpec& spec);

/// Parses "average:9", "gaussian:7:1.5" or "delta".
KernelSpec parse_kernel_spec(const std::string& text);
std::string to_string(const KernelSpec& spec);

/// Periodic forward differences:
///   dx(r,c) = u(r, c+1) - u(r,c),  dy(r,c) = u(r+1, c) - u(r,c).
GradientField forward_diff(const Image& u);

/// Exact adjoint of forward_diff (negative backward-difference divergence).
Image divergence_adjoint(const GradientField& g);

/// Circular 2D convolution (kernel flipped) computed directly in the spatial
/// domain. Throws Errc::kKernelTooLarge if the kernel exceeds the image.
Image convolve_periodic(const Image& u, const Kernel& k);

/// Circular correlation with k, i.e. the adjoint of convolve_periodic.
Image correlate_periodic(const Image& u, const Kernel& k);

/// v(r,c) = u(r - dr mod n, c - dc mod n).
Image cyclic_shift(const Image& u, std::ptrdiff_t dr, std::ptrdiff_t dc);

}  // namespace ftvd
