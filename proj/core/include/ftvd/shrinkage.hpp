#pragma once

#include "ftvd/image.hpp"

namespace ftvd {

enum class TvVariant { kIsotropic, kAnisotropic };

/// Per-pixel minimizer of |w_i|_2 + 1/(2t) |w_i - v_i|_2^2 (radial shrink).
/// Pixels with |v_i|_2 <= t map to zero. Throws Errc::kNonpositiveThreshold.
GradientField shrink_iso(const GradientField& v, double t);

/// Per-pixel minimizer of |w_i|_1 + 1/(2t) |w_i - v_i|_2^2 (componentwise
/// soft threshold).
GradientField shrink_aniso(const GradientField& v, double t);

GradientField shrink(const GradientField& v, double t, TvVariant variant);

/// Per-pixel TV norm: |g_i|_2 for isotropic, |g_i|_1 for anisotropic.
double tv_norm_sum(const GradientField& g, TvVariant variant);

}  // namespace ftvd
