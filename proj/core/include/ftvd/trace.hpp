#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ftvd/image.hpp"
#include "ftvd/shrinkage.hpp"

namespace ftvd {

/// Which iterate images a trace keeps alongside the scalar scores.
enum class FieldRetention {
  kAll,          // every record keeps u, w (and lambda for the ADM solver)
  kBestAndFinal, // only the best-SNR stage record and the latest stage record keep images
};

/// {2^0, 2^1, ..., 2^10}.
std::vector<double> default_beta_schedule();

struct SolverConfig {
  double mu = 1.0;
  TvVariant tv_variant = TvVariant::kIsotropic;
  /// Stop once |u+ - u| / max(|u|, 1e-12) drops below this.
  double tol = 1e-4;
  int max_inner_iters = 100;
  /// Continuation sequence for the penalty solver; strictly ascending.
  std::vector<double> beta_schedule = default_beta_schedule();
  /// Penalty weight of the ADM solver.
  double beta_fixed = 10.0;
  int max_multiplier_updates = 500;
  /// The ADM solver also requires max_i |w_i - D_i u| <= this * tol before
  /// it declares convergence.
  double feasibility_factor = 10.0;
  /// Also record every inner iteration of the penalty solver.
  bool record_inner = false;
  FieldRetention retention = FieldRetention::kAll;

  /// Throws Errc::kInvalidArgument on a violated invariant.
  void validate() const;
};

enum class RecordKind { kInner, kStage };

struct IterateRecord {
  RecordKind kind = RecordKind::kStage;
  /// Continuation step (penalty) or multiplier-update index (ADM), from 0.
  int stage_index = 0;
  /// Inner iterations spent in the stage so far.
  int inner_iter = 0;
  double beta = 0.0;
  std::optional<Image> u;
  std::optional<GradientField> w;
  std::optional<GradientField> lambda;
  std::optional<double> snr_db;
  double objective_tv = 0.0;
  double penalty_objective = 0.0;
  /// max_i |w_i - D_i u|_2
  double constraint_residual = 0.0;
  double rel_change = 0.0;
};

enum class SolverKind { kPenaltyContinuation, kAugmentedLagrangian };

struct IterateTrace {
  SolverKind solver = SolverKind::kPenaltyContinuation;
  std::vector<IterateRecord> records;
  SolverConfig config;
  bool converged = false;

  /// Positions in `records` of the stage-level records, in order.
  std::vector<std::size_t> stage_positions() const;
  std::size_t stage_count() const;
  /// The last stage record. Throws Errc::kMissingScores on an empty trace.
  const IterateRecord& final_stage() const;
};

}  // namespace ftvd
