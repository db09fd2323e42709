#include "ftvd/decomposition.hpp"

#include <complex>

#include "ftvd/error.hpp"
#include "ftvd/grid_ops.hpp"

namespace ftvd {

Decomposition decompose(const Image& u, const GradientField& w, const SpectralCache& cache) {
  if (u.size() != w.size() || u.size() != cache.size()) {
    throw Error(Errc::kShapeMismatch, "decompose operands differ in size");
  }
  const Spectrum wx = cache.forward(w.dx());
  const Spectrum wy = cache.forward(w.dy());
  const auto& ex = cache.eig_dx_half();
  const auto& ey = cache.eig_dy_half();
  const auto& edtd = cache.eig_dtd_half();

  // Normal equations D^T D x = D^T w; the zero frequency is pinned to 0.
  Spectrum x(wx.size());
  for (std::size_t i = 1; i < x.size(); ++i) {
    x[i] = (std::conj(ex[i]) * wx[i] + std::conj(ey[i]) * wy[i]) / edtd[i];
  }
  x[0] = 0.0;

  Decomposition out{cache.inverse(x), Image(u.size())};
  out.u2 = u - out.u1;
  out.integrability_residual = max_pointwise_distance(w, forward_diff(out.u1));
  return out;
}

double tikhonov_energy(const Image& u2) {
  const GradientField g = forward_diff(u2);
  return dot(g, g);
}

}  // namespace ftvd
