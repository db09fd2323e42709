#pragma once

#include "ftvd/image.hpp"
#include "ftvd/spectral.hpp"

namespace ftvd {

/// u = u1 + u2 split of an iterate: u1 is the zero-mean least-squares
/// potential of the split field w (the piecewise-constant part), u2 = u - u1
/// is the smooth part and carries mean(u).
struct Decomposition {
  Image u1;
  Image u2;
  /// max_i |w_i - D_i u1|_2. Nonzero when w is not an exact gradient field.
  double integrability_residual = 0.0;
};

Decomposition decompose(const Image& u, const GradientField& w, const SpectralCache& cache);

/// sum_i |D_i u2|_2^2, without the beta/2 weight.
double tikhonov_energy(const Image& u2);

}  // namespace ftvd
