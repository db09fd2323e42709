#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ftvd/grid_ops.hpp"
#include "ftvd/trace.hpp"

namespace ftvd {

enum class SolverChoice { kFtvd3, kFtvd4 };

SolverChoice parse_solver_choice(const std::string& text);
const char* to_string(SolverChoice s) noexcept;
TvVariant parse_tv_variant(const std::string& text);
const char* to_string(TvVariant v) noexcept;

struct ExperimentConfig {
  /// Ground-truth image (PGM). Empty selects the built-in phantom.
  std::filesystem::path input_path;
  std::size_t phantom_size = 128;
  /// Optional pre-degraded observation; skips the degradation step.
  std::filesystem::path observed_path;
  std::filesystem::path output_dir;
  SolverChoice solver = SolverChoice::kFtvd3;
  KernelSpec kernel = kernel_spec::Average{9};
  double sigma = 0.01;
  /// Unset means 0.05 / sigma^2.
  std::optional<double> mu;
  std::vector<double> beta_schedule = default_beta_schedule();
  double beta_fixed = 10.0;
  std::uint64_t seed = 0;
  TvVariant tv_variant = TvVariant::kIsotropic;
  bool save_intermediates = false;
  double tol = 1e-4;
  int max_inner_iters = 100;
  int max_multiplier_updates = 500;

  double resolved_mu() const;
  SolverConfig solver_config() const;
};

struct ExperimentSummary {
  SolverChoice solver = SolverChoice::kFtvd3;
  std::size_t record_count = 0;
  std::size_t stage_count = 0;
  int best_stage = 0;
  int final_stage = 0;
  double best_snr = 0.0;
  double final_snr = 0.0;
  double observed_snr = 0.0;
  bool converged = false;
  double best_integrability_residual = 0.0;
  double final_integrability_residual = 0.0;
};

/// trace.csv header, fixed.
inline constexpr const char* kTraceCsvHeader =
    "stage_index,inner_iter,beta,snr_db,objective_tv,penalty_objective,constraint_residual,rel_change";

/// Shortest round-trip decimal form.
std::string format_double(double v);

void write_trace_csv(std::ostream& out, const IterateTrace& trace);
void write_trace_csv(const std::filesystem::path& path, const IterateTrace& trace);

/// One parsed trace.csv row; snr_db is absent when the field is empty.
struct TraceRow {
  int stage_index = 0;
  int inner_iter = 0;
  double beta = 0.0;
  std::optional<double> snr_db;
  double objective_tv = 0.0;
  double penalty_objective = 0.0;
  double constraint_residual = 0.0;
  double rel_change = 0.0;
};

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

/// Loads or synthesizes the ground truth, degrades it, runs the chosen
/// solver and writes trace.csv, best/final images, their u1/u2
/// decompositions, summary.txt and run_info.txt into cfg.output_dir.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

std::string format_summary(const ExperimentSummary& s);

}  // namespace ftvd
