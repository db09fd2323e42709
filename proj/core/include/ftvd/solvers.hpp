#pragma once

#include <functional>

#include "ftvd/grid_ops.hpp"
#include "ftvd/image.hpp"
#include "ftvd/shrinkage.hpp"
#include "ftvd/spectral.hpp"
#include "ftvd/trace.hpp"

namespace ftvd {

/// sum_i |D_i u| + mu/2 |K u - f|^2
double eval_tv_objective(const Image& u, const Image& f, const SpectralCache& cache, double mu,
                         TvVariant variant);

/// sum_i |w_i| + beta/2 sum_i |w_i - D_i u|^2 + mu/2 |K u - f|^2
double penalty_objective(const Image& u, const GradientField& w, const Image& f, const SpectralCache& cache,
                         double mu, double beta, TvVariant variant);

/// max_i |w_i - D_i u|_2
double constraint_residual(const Image& u, const GradientField& w);

/// Called after every inner iteration with (iteration from 1, u, w, rel_change).
using InnerObserver = std::function<void(int, const Image&, const GradientField&, double)>;

struct PenaltyResult {
  Image u;
  GradientField w;
  int iterations = 0;
  double rel_change = 0.0;
  bool converged = false;
};

/// Alternating minimization of the quadratic-penalty objective at fixed beta:
///   w <- shrink(D u, 1/beta);  u <- solve_u(f, w, 0, mu, beta)
/// until the relative change of u drops below cfg.tol or cfg.max_inner_iters
/// is reached.
PenaltyResult penalty_inner_loop(const Image& f, double beta, const Image& init_u, const SolverConfig& cfg,
                                 const SpectralCache& cache, const InnerObserver& observer = {});

/// Penalty method with continuation over cfg.beta_schedule, warm-starting
/// each stage from the previous one (first stage starts at u = f). Every
/// stage is solved to the same tolerance and contributes one stage record.
IterateTrace ftvd3_solve(const Image& f, const Kernel& k, const SolverConfig& cfg,
                         const Image* ground_truth = nullptr);
IterateTrace ftvd3_solve(const Image& f, const SpectralCache& cache, const SolverConfig& cfg,
                         const Image* ground_truth = nullptr);

/// Alternating direction method on the augmented Lagrangian at fixed
/// cfg.beta_fixed, one w-step, one u-step and one multiplier update per
/// iteration:
///   w      <- shrink(D u + lambda / beta, 1/beta)
///   u      <- solve_u(f, w, lambda, mu, beta)
///   lambda <- lambda - beta (w - D u)
/// Starts from u = f, lambda = 0 and records every iteration. Stops once the
/// relative change of u is below cfg.tol and the constraint residual is at
/// most cfg.feasibility_factor * cfg.tol, or after cfg.max_multiplier_updates.
IterateTrace ftvd4_solve(const Image& f, const Kernel& k, const SolverConfig& cfg,
                         const Image* ground_truth = nullptr);
IterateTrace ftvd4_solve(const Image& f, const SpectralCache& cache, const SolverConfig& cfg,
                         const Image* ground_truth = nullptr);

}  // namespace ftvd
