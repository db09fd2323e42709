#include "ftvd/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "ftvd/error.hpp"

namespace ftvd {

namespace {

// The FFTW planner is not reentrant; execution of an existing plan on fresh
// arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct RealBuffer {
  explicit RealBuffer(std::size_t count) : data(fftw_alloc_real(count)) {}
  ~RealBuffer() { fftw_free(data); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;
  double* data;
};

struct ComplexBuffer {
  explicit ComplexBuffer(std::size_t count) : data(fftw_alloc_complex(count)) {}
  ~ComplexBuffer() { fftw_free(data); }
  ComplexBuffer(const ComplexBuffer&) = delete;
  ComplexBuffer& operator=(const ComplexBuffer&) = delete;
  fftw_complex* data;
};

}  // namespace

struct SpectralCache::Plans {
  explicit Plans(std::size_t n) {
    const int side = static_cast<int>(n);
    RealBuffer real(n * n);
    ComplexBuffer spec(n * (n / 2 + 1));
    std::lock_guard lock(planner_mutex());
    r2c = fftw_plan_dft_r2c_2d(side, side, real.data, spec.data, FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_2d(side, side, spec.data, real.data, FFTW_ESTIMATE);
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;

  fftw_plan r2c;
  fftw_plan c2r;
};

SpectralCache::SpectralCache(const Kernel& k, std::size_t n) : n_(n) {
  if (n < 2) throw Error(Errc::kInvalidArgument, "image side must be at least 2");
  if (k.size() > n) {
    throw Error(Errc::kKernelTooLarge,
                "kernel of size " + std::to_string(k.size()) + " exceeds image of size " + std::to_string(n));
  }
  plans_ = std::make_shared<const Plans>(n);

  // Kernel zero-padded to n x n with its anchor moved to the origin.
  Image centered(n);
  const auto h = static_cast<std::ptrdiff_t>(k.anchor());
  const auto side = static_cast<std::ptrdiff_t>(n);
  for (std::size_t a = 0; a < k.size(); ++a) {
    for (std::size_t b = 0; b < k.size(); ++b) {
      const auto r = ((static_cast<std::ptrdiff_t>(a) - h) % side + side) % side;
      const auto c = ((static_cast<std::ptrdiff_t>(b) - h) % side + side) % side;
      centered(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) += k(a, b);
    }
  }
  eig_k_ = forward(centered);

  // Forward-difference stencils: shifting by +1 multiplies bin q by e^{2 pi i q / n}.
  const std::size_t hc = half_cols();
  eig_dx_.resize(n * hc);
  eig_dy_.resize(n * hc);
  eig_dtd_.resize(n * hc);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < hc; ++q) {
      const std::size_t i = p * hc + q;
      eig_dx_[i] = std::polar(1.0, step * static_cast<double>(q)) - 1.0;
      eig_dy_[i] = std::polar(1.0, step * static_cast<double>(p)) - 1.0;
      const double sx = std::sin(std::numbers::pi * static_cast<double>(q) / static_cast<double>(n));
      const double sy = std::sin(std::numbers::pi * static_cast<double>(p) / static_cast<double>(n));
      eig_dtd_[i] = 4.0 * (sx * sx + sy * sy);
    }
  }
}

std::complex<double> SpectralCache::full_plane(const Spectrum& half, std::size_t row,
                                               std::size_t col) const noexcept {
  const std::size_t hc = half_cols();
  if (col < hc) return half[row * hc + col];
  const std::size_t mr = (n_ - row) % n_;
  const std::size_t mc = n_ - col;
  return std::conj(half[mr * hc + mc]);
}

std::complex<double> SpectralCache::eig_k(std::size_t row, std::size_t col) const noexcept {
  return full_plane(eig_k_, row, col);
}

std::complex<double> SpectralCache::eig_dx(std::size_t row, std::size_t col) const noexcept {
  return full_plane(eig_dx_, row, col);
}

std::complex<double> SpectralCache::eig_dy(std::size_t row, std::size_t col) const noexcept {
  return full_plane(eig_dy_, row, col);
}

double SpectralCache::eig_dtd(std::size_t row, std::size_t col) const noexcept {
  return std::norm(eig_dx(row, col)) + std::norm(eig_dy(row, col));
}

Spectrum SpectralCache::forward(const Image& u) const {
  if (u.size() != n_) throw Error(Errc::kShapeMismatch, "image does not match spectral cache size");
  const std::size_t count = n_ * half_cols();
  RealBuffer in(n_ * n_);
  ComplexBuffer out(count);
  std::copy(u.values().begin(), u.values().end(), in.data);
  fftw_execute_dft_r2c(plans_->r2c, in.data, out.data);
  Spectrum s(count);
  for (std::size_t i = 0; i < count; ++i) s[i] = {out.data[i][0], out.data[i][1]};
  return s;
}

Image SpectralCache::inverse(const Spectrum& s) const {
  const std::size_t count = n_ * half_cols();
  if (s.size() != count) throw Error(Errc::kShapeMismatch, "spectrum does not match spectral cache size");
  ComplexBuffer in(count);
  RealBuffer out(n_ * n_);
  for (std::size_t i = 0; i < count; ++i) {
    in.data[i][0] = s[i].real();
    in.data[i][1] = s[i].imag();
  }
  fftw_execute_dft_c2r(plans_->c2r, in.data, out.data);
  const double scale = 1.0 / static_cast<double>(n_ * n_);
  Image u(n_);
  auto v = u.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = out.data[i] * scale;
  return u;
}

Image SpectralCache::apply_kernel(const Image& u) const {
  Spectrum s = forward(u);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= eig_k_[i];
  return inverse(s);
}

Image SpectralCache::apply_kernel_adjoint(const Image& u) const {
  Spectrum s = forward(u);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= std::conj(eig_k_[i]);
  return inverse(s);
}

Image solve_u(const Image& f, const GradientField& w, const GradientField& lambda, double mu, double beta,
              const SpectralCache& cache) {
  if (!(mu > 0.0) || !(beta > 0.0)) throw Error(Errc::kInvalidArgument, "mu and beta must be positive");

  const GradientField g = beta * w - lambda;
  const Spectrum f_hat = cache.forward(f);
  const Spectrum gx_hat = cache.forward(g.dx());
  const Spectrum gy_hat = cache.forward(g.dy());

  const auto& ek = cache.eig_k_half();
  const auto& ex = cache.eig_dx_half();
  const auto& ey = cache.eig_dy_half();
  const auto& edtd = cache.eig_dtd_half();

  Spectrum u_hat(f_hat.size());
  for (std::size_t i = 0; i < u_hat.size(); ++i) {
    const double denom = mu * std::norm(ek[i]) + beta * edtd[i];
    if (denom < kSingularThreshold) {
      throw Error(Errc::kSingularSystem, "normal-equation denominator vanishes at a frequency");
    }
    const std::complex<double> rhs =
        mu * std::conj(ek[i]) * f_hat[i] + std::conj(ex[i]) * gx_hat[i] + std::conj(ey[i]) * gy_hat[i];
    u_hat[i] = rhs / denom;
  }
  return cache.inverse(u_hat);
}

}  // namespace ftvd
