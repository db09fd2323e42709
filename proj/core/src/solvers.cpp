#include "ftvd/solvers.hpp"

#include <cmath>
#include <optional>
#include <utility>

#include "ftvd/error.hpp"
#include "ftvd/metrics.hpp"

namespace ftvd {

std::vector<double> default_beta_schedule() {
  std::vector<double> betas;
  for (int e = 0; e <= 10; ++e) betas.push_back(std::ldexp(1.0, e));
  return betas;
}

void SolverConfig::validate() const {
  if (!(mu > 0.0)) throw Error(Errc::kInvalidArgument, "mu must be positive");
  if (!(tol > 0.0 && tol < 1.0)) throw Error(Errc::kInvalidArgument, "tol must lie in (0, 1)");
  if (max_inner_iters <= 0) throw Error(Errc::kInvalidArgument, "max_inner_iters must be positive");
  if (max_multiplier_updates <= 0) throw Error(Errc::kInvalidArgument, "max_multiplier_updates must be positive");
  if (!(feasibility_factor > 0.0)) throw Error(Errc::kInvalidArgument, "feasibility_factor must be positive");
  if (!(beta_fixed > 0.0)) throw Error(Errc::kInvalidArgument, "beta_fixed must be positive");
  if (beta_schedule.empty()) throw Error(Errc::kInvalidArgument, "beta_schedule is empty");
  for (std::size_t i = 0; i < beta_schedule.size(); ++i) {
    if (!(beta_schedule[i] > 0.0)) throw Error(Errc::kInvalidArgument, "beta_schedule entries must be positive");
    if (i > 0 && !(beta_schedule[i] > beta_schedule[i - 1])) {
      throw Error(Errc::kInvalidArgument, "beta_schedule must be strictly ascending");
    }
  }
}

std::vector<std::size_t> IterateTrace::stage_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].kind == RecordKind::kStage) out.push_back(i);
  }
  return out;
}

std::size_t IterateTrace::stage_count() const { return stage_positions().size(); }

const IterateRecord& IterateTrace::final_stage() const {
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    if (it->kind == RecordKind::kStage) return *it;
  }
  throw Error(Errc::kMissingScores, "trace has no stage records");
}

double eval_tv_objective(const Image& u, const Image& f, const SpectralCache& cache, double mu,
                         TvVariant variant) {
  const double fidelity = (cache.apply_kernel(u) - f).norm();
  return tv_norm_sum(forward_diff(u), variant) + 0.5 * mu * fidelity * fidelity;
}

double penalty_objective(const Image& u, const GradientField& w, const Image& f, const SpectralCache& cache,
                         double mu, double beta, TvVariant variant) {
  const double fidelity = (cache.apply_kernel(u) - f).norm();
  const double split = (w - forward_diff(u)).norm();
  return tv_norm_sum(w, variant) + 0.5 * beta * split * split + 0.5 * mu * fidelity * fidelity;
}

double constraint_residual(const Image& u, const GradientField& w) {
  return max_pointwise_distance(w, forward_diff(u));
}

namespace {

struct RecordInputs {
  const Image& f;
  const SpectralCache& cache;
  const SolverConfig& cfg;
  const Image* truth;
};

IterateRecord make_record(const RecordInputs& in, RecordKind kind, int stage, int inner, double beta,
                          const Image& u, const GradientField& w, const GradientField* lambda, double rc) {
  IterateRecord rec;
  rec.kind = kind;
  rec.stage_index = stage;
  rec.inner_iter = inner;
  rec.beta = beta;
  rec.objective_tv = eval_tv_objective(u, in.f, in.cache, in.cfg.mu, in.cfg.tv_variant);
  rec.penalty_objective = penalty_objective(u, w, in.f, in.cache, in.cfg.mu, beta, in.cfg.tv_variant);
  rec.constraint_residual = constraint_residual(u, w);
  rec.rel_change = rc;
  if (in.truth != nullptr) rec.snr_db = snr_db(u, *in.truth);
  rec.u = u;
  rec.w = w;
  if (lambda != nullptr) rec.lambda = *lambda;
  return rec;
}

void strip_fields(IterateRecord& rec) {
  rec.u.reset();
  rec.w.reset();
  rec.lambda.reset();
}

// Appends records while enforcing the configured image retention.
class TraceBuilder {
 public:
  TraceBuilder(SolverKind solver, const SolverConfig& cfg) {
    trace_.solver = solver;
    trace_.config = cfg;
  }

  void push(IterateRecord rec) {
    const bool keep_all = trace_.config.retention == FieldRetention::kAll;
    if (rec.kind == RecordKind::kInner) {
      if (!keep_all) strip_fields(rec);
      trace_.records.push_back(std::move(rec));
      return;
    }
    trace_.records.push_back(std::move(rec));
    const std::size_t pos = trace_.records.size() - 1;
    if (!keep_all) {
      const auto& snr = trace_.records[pos].snr_db;
      const std::optional<std::size_t> previous = last_stage_;
      if (snr && (!best_ || *snr > *trace_.records[*best_].snr_db)) {
        if (best_ && best_ != previous) strip_fields(trace_.records[*best_]);
        best_ = pos;
      }
      if (previous && previous != best_) strip_fields(trace_.records[*previous]);
    }
    last_stage_ = pos;
  }

  IterateTrace finish(bool converged) && {
    trace_.converged = converged;
    return std::move(trace_);
  }

 private:
  IterateTrace trace_;
  std::optional<std::size_t> best_;
  std::optional<std::size_t> last_stage_;
};

void require_shapes(const Image& f, const SpectralCache& cache, const Image* truth) {
  if (f.size() != cache.size()) throw Error(Errc::kShapeMismatch, "observation does not match spectral cache");
  if (truth != nullptr && truth->size() != f.size()) {
    throw Error(Errc::kShapeMismatch, "ground truth does not match observation");
  }
}

}  // namespace

PenaltyResult penalty_inner_loop(const Image& f, double beta, const Image& init_u, const SolverConfig& cfg,
                                 const SpectralCache& cache, const InnerObserver& observer) {
  if (!(beta > 0.0)) throw Error(Errc::kInvalidArgument, "beta must be positive");
  const GradientField zero(f.size());
  PenaltyResult result{init_u, GradientField(f.size())};
  for (int it = 1; it <= cfg.max_inner_iters; ++it) {
    result.w = shrink(forward_diff(result.u), 1.0 / beta, cfg.tv_variant);
    Image next = solve_u(f, result.w, zero, cfg.mu, beta, cache);
    result.rel_change = rel_change(next, result.u);
    result.u = std::move(next);
    result.iterations = it;
    if (observer) observer(it, result.u, result.w, result.rel_change);
    if (result.rel_change < cfg.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

IterateTrace ftvd3_solve(const Image& f, const Kernel& k, const SolverConfig& cfg, const Image* ground_truth) {
  return ftvd3_solve(f, SpectralCache(k, f.size()), cfg, ground_truth);
}

IterateTrace ftvd3_solve(const Image& f, const SpectralCache& cache, const SolverConfig& cfg,
                         const Image* ground_truth) {
  cfg.validate();
  require_shapes(f, cache, ground_truth);
  const RecordInputs in{f, cache, cfg, ground_truth};
  TraceBuilder builder(SolverKind::kPenaltyContinuation, cfg);

  Image u = f;
  bool converged = false;
  for (std::size_t s = 0; s < cfg.beta_schedule.size(); ++s) {
    const double beta = cfg.beta_schedule[s];
    const int stage = static_cast<int>(s);
    InnerObserver observer;
    if (cfg.record_inner) {
      observer = [&](int it, const Image& ui, const GradientField& wi, double rc) {
        builder.push(make_record(in, RecordKind::kInner, stage, it, beta, ui, wi, nullptr, rc));
      };
    }
    PenaltyResult stage_result = penalty_inner_loop(f, beta, u, cfg, cache, observer);
    builder.push(make_record(in, RecordKind::kStage, stage, stage_result.iterations, beta, stage_result.u,
                             stage_result.w, nullptr, stage_result.rel_change));
    converged = stage_result.converged;
    u = std::move(stage_result.u);
  }
  return std::move(builder).finish(converged);
}

IterateTrace ftvd4_solve(const Image& f, const Kernel& k, const SolverConfig& cfg, const Image* ground_truth) {
  return ftvd4_solve(f, SpectralCache(k, f.size()), cfg, ground_truth);
}

IterateTrace ftvd4_solve(const Image& f, const SpectralCache& cache, const SolverConfig& cfg,
                         const Image* ground_truth) {
  cfg.validate();
  require_shapes(f, cache, ground_truth);
  const RecordInputs in{f, cache, cfg, ground_truth};
  TraceBuilder builder(SolverKind::kAugmentedLagrangian, cfg);

  const double beta = cfg.beta_fixed;
  Image u = f;
  GradientField lambda(f.size());
  bool converged = false;
  for (int k = 0; k < cfg.max_multiplier_updates; ++k) {
    const GradientField w = shrink(forward_diff(u) + (1.0 / beta) * lambda, 1.0 / beta, cfg.tv_variant);
    Image next = solve_u(f, w, lambda, cfg.mu, beta, cache);
    lambda -= beta * (w - forward_diff(next));
    const double rc = rel_change(next, u);
    u = std::move(next);
    IterateRecord rec = make_record(in, RecordKind::kStage, k, 1, beta, u, w, &lambda, rc);
    const bool feasible = rec.constraint_residual <= cfg.feasibility_factor * cfg.tol;
    builder.push(std::move(rec));
    if (rc < cfg.tol && feasible) {
      converged = true;
      break;
    }
  }
  return std::move(builder).finish(converged);
}

}  // namespace ftvd
