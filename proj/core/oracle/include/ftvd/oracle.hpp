#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "ftvd/grid_ops.hpp"
#include "ftvd/image.hpp"
#include "ftvd/shrinkage.hpp"

// Brute-force reference implementations for tests and acceptance runs. Nothing
// here calls the FFT path, the shrinkage operators or the solvers.
namespace ftvd::oracle {

inline constexpr std::size_t kMaxDenseSide = 32;

enum class OperatorKind { kD, kDt, kK };

/// Explicit matrix of D (2n^2 x n^2, dx rows first), D^T, or K (n^2 x n^2),
/// assembled entry by entry from the stencil definitions on row-major
/// vectorized images. Throws Errc::kTooLarge for n > kMaxDenseSide.
Eigen::MatrixXd dense_operator(OperatorKind kind, std::size_t n, const Kernel* k = nullptr);

Eigen::VectorXd vectorize(const Image& u);
Eigen::VectorXd vectorize(const GradientField& g);
Image to_image(const Eigen::VectorXd& v, std::size_t n);
GradientField to_field(const Eigen::VectorXd& v, std::size_t n);

/// Dense solve of (mu K^T K + beta D^T D) u = mu K^T f + D^T (beta w - lambda).
Image dense_solve_u(const Image& f, const GradientField& w, const GradientField& lambda, double mu, double beta,
                    const Kernel& k);

struct ReferenceOptions {
  double epsilon = 1e-6;
  /// Stop when |grad| < gradient_tol_per_side * n.
  double gradient_tol_per_side = 1e-8;
  int max_iterations = 1'000'000;
};

/// sum_i sqrt(|D_i u|^2 + eps^2) + mu/2 |K u - f|^2 (per component for aniso).
double smoothed_tv_objective(const Image& u, const Image& f, const Kernel& k, double mu, double epsilon,
                             TvVariant variant);

/// Minimizer of the smoothed TV/L2 objective above. Damped Newton steps on
/// dense matrices with Armijo backtracking, warm-started through a decreasing
/// sequence of smoothing levels down to options.epsilon. Throws
/// Errc::kNoConvergence when the iteration cap is hit.
Image reference_tv_solve(const Image& f, const Kernel& k, double mu, TvVariant variant,
                         const ReferenceOptions& options = {});

}  // namespace ftvd::oracle
