#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "ftvd/grid_ops.hpp"
#include "ftvd/image.hpp"

namespace ftvd {

/// Half-plane spectrum of a real n x n image: n rows of n/2 + 1 complex bins.
using Spectrum = std::vector<std::complex<double>>;

/// Frequency-domain diagonalization of K, Dx and Dy under periodic
/// boundaries, for one (kernel, n) pair. Immutable once built; copies share
/// the underlying transform plans and may be used concurrently.
class SpectralCache {
 public:
  /// Throws Errc::kKernelTooLarge when the kernel does not fit in n x n.
  SpectralCache(const Kernel& k, std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t half_cols() const noexcept { return n_ / 2 + 1; }

  // Full-plane accessors; bins with col > n/2 are recovered from conjugate
  // symmetry of the real transform.
  std::complex<double> eig_k(std::size_t row, std::size_t col) const noexcept;
  std::complex<double> eig_dx(std::size_t row, std::size_t col) const noexcept;
  std::complex<double> eig_dy(std::size_t row, std::size_t col) const noexcept;
  double eig_dtd(std::size_t row, std::size_t col) const noexcept;

  // Half-plane tables, indexed row * half_cols() + col.
  const Spectrum& eig_k_half() const noexcept { return eig_k_; }
  const Spectrum& eig_dx_half() const noexcept { return eig_dx_; }
  const Spectrum& eig_dy_half() const noexcept { return eig_dy_; }
  const std::vector<double>& eig_dtd_half() const noexcept { return eig_dtd_; }

  /// Unnormalized forward transform.
  Spectrum forward(const Image& u) const;
  /// Inverse transform including the 1/n^2 factor, so inverse(forward(u)) == u.
  Image inverse(const Spectrum& s) const;

  Image apply_kernel(const Image& u) const;
  Image apply_kernel_adjoint(const Image& u) const;

 private:
  struct Plans;

  std::complex<double> full_plane(const Spectrum& half, std::size_t row, std::size_t col) const noexcept;

  std::size_t n_;
  std::shared_ptr<const Plans> plans_;
  Spectrum eig_k_;
  Spectrum eig_dx_;
  Spectrum eig_dy_;
  std::vector<double> eig_dtd_;
};

/// Denominators below this raise Errc::kSingularSystem in solve_u.
inline constexpr double kSingularThreshold = 1e-14;

/// Exact minimizer of
///   mu/2 |K u - f|^2 + beta/2 sum |w_i - D_i u|^2 - sum lambda_i^T (w_i - D_i u),
/// i.e. the solution of (mu K^T K + beta D^T D) u = mu K^T f + D^T (beta w - lambda),
/// by per-frequency division. Pass a zero field for lambda in the penalty solver.
Image solve_u(const Image& f, const GradientField& w, const GradientField& lambda, double mu, double beta,
              const SpectralCache& cache);

}  // namespace ftvd
