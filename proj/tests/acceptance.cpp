// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ftvd/decomposition.hpp"
#include "ftvd/degrade.hpp"
#include "ftvd/error.hpp"
#include "ftvd/experiment.hpp"
#include "ftvd/metrics.hpp"
#include "ftvd/oracle.hpp"
#include "ftvd/phantom.hpp"
#include "ftvd/solvers.hpp"

namespace fs = std::filesystem;
using namespace ftvd;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Image random_image(std::size_t n, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Image u(n);
  for (double& v : u.values()) v = dist(rng);
  return u;
}

GradientField random_field(std::size_t n, std::mt19937_64& rng) {
  return GradientField(random_image(n, rng, -1.0, 1.0), random_image(n, rng, -1.0, 1.0));
}

Kernel random_kernel(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> taps(9);
  double s = 0.0;
  for (double& t : taps) s += (t = dist(rng));
  for (double& t : taps) t /= s;
  return Kernel(3, std::move(taps));
}

double rel_l2(const Image& a, const Image& b) { return (a - b).norm() / b.norm(); }

Outcome operators_match_dense() {
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  for (std::size_t n : {4u, 8u, 16u}) {
    const Eigen::MatrixXd d = oracle::dense_operator(oracle::OperatorKind::kD, n);
    const Eigen::MatrixXd dt = oracle::dense_operator(oracle::OperatorKind::kDt, n);
    for (int trial = 0; trial < 50; ++trial) {
      const Image u = random_image(n, rng);
      const GradientField g = random_field(n, rng);
      const Kernel k = random_kernel(rng);
      const Eigen::MatrixXd kd = oracle::dense_operator(oracle::OperatorKind::kK, n, &k);
      worst = std::max(worst, max_abs_diff(forward_diff(u), oracle::to_field(d * oracle::vectorize(u), n)));
      worst = std::max(worst, max_abs_diff(divergence_adjoint(g), oracle::to_image(dt * oracle::vectorize(g), n)));
      worst = std::max(worst, max_abs_diff(convolve_periodic(u, k), oracle::to_image(kd * oracle::vectorize(u), n)));
    }
  }
  return {worst <= 1e-10, fmt("max abs error %.3g (limit 1e-10)", worst)};
}

Outcome adjointness() {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<std::size_t> size(2, 64);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = size(rng);
    const Image u = random_image(n, rng, -1.0, 1.0);
    const GradientField g = random_field(n, rng);
    const double gap = std::abs(dot(forward_diff(u), g) - dot(u, divergence_adjoint(g)));
    worst = std::max(worst, gap / (u.norm() * g.norm()));
  }
  return {worst <= 1e-10, fmt("max normalized gap %.3g (limit 1e-10)", worst)};
}

Outcome solve_u_matches_dense() {
  std::mt19937_64 rng(1003);
  std::uniform_real_distribution<double> log_mu(-1.0, 4.0);
  std::uniform_real_distribution<double> log_beta(-1.0, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Kernel k = random_kernel(rng);
    const SpectralCache cache(k, 8);
    const double mu = std::pow(10.0, log_mu(rng));
    const double beta = std::pow(10.0, log_beta(rng));
    const Image f = random_image(8, rng);
    const GradientField w = random_field(8, rng);
    const GradientField lambda = random_field(8, rng);
    const Image fast = solve_u(f, w, lambda, mu, beta, cache);
    const Image dense = oracle::dense_solve_u(f, w, lambda, mu, beta, k);
    worst = std::max(worst, rel_l2(fast, dense));
  }
  return {worst <= 1e-8, fmt("max relative error %.3g (limit 1e-8)", worst)};
}

double prox_value(double wx, double wy, double vx, double vy, double t, TvVariant variant) {
  const double norm = variant == TvVariant::kIsotropic ? std::hypot(wx, wy) : std::abs(wx) + std::abs(wy);
  return norm + ((wx - vx) * (wx - vx) + (wy - vy) * (wy - vy)) / (2.0 * t);
}

Outcome shrink_optimality() {
  std::mt19937_64 rng(1004);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_real_distribution<double> log_t(-3.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = -1e300;
  for (int trial = 0; trial < 1000; ++trial) {
    const double vx = coord(rng);
    const double vy = coord(rng);
    const double t = std::pow(10.0, log_t(rng));
    const GradientField v(Image(2, {vx, 0, 0, 0}), Image(2, {vy, 0, 0, 0}));
    for (TvVariant variant : {TvVariant::kIsotropic, TvVariant::kAnisotropic}) {
      const GradientField s = shrink(v, t, variant);
      const double sx = s.dx()(0, 0);
      const double sy = s.dy()(0, 0);
      const double at_shrink = prox_value(sx, sy, vx, vy, t, variant);
      for (int p = 0; p < 100; ++p) {
        const double r = 1e-2 * std::sqrt(unit(rng));
        const double a = angle(rng);
        const double other = prox_value(sx + r * std::cos(a), sy + r * std::sin(a), vx, vy, t, variant);
        worst = std::max(worst, at_shrink - other);
      }
    }
  }
  return {worst <= 1e-12, fmt("max excess over perturbations %.3g (limit 1e-12)", worst)};
}

Outcome penalty_descent() {
  std::mt19937_64 rng(1005);
  std::uniform_real_distribution<double> log_beta(0.0, 10.0 * std::log10(2.0));
  double worst = 0.0;
  std::size_t checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Kernel k = random_kernel(rng);
    const SpectralCache cache(k, 16);
    const Image f = degrade(random_image(16, rng), k, 0.01, 100 + static_cast<std::uint64_t>(trial));
    SolverConfig cfg;
    cfg.mu = 500.0;
    cfg.tv_variant = trial % 2 == 0 ? TvVariant::kIsotropic : TvVariant::kAnisotropic;
    cfg.tol = 1e-12;
    cfg.max_inner_iters = 200;
    const double beta = std::pow(10.0, log_beta(rng));
    double previous = penalty_objective(f, shrink(forward_diff(f), 1.0 / beta, cfg.tv_variant), f, cache, cfg.mu,
                                        beta, cfg.tv_variant);
    penalty_inner_loop(f, beta, f, cfg, cache, [&](int, const Image& u, const GradientField& w, double) {
      const double q = penalty_objective(u, w, f, cache, cfg.mu, beta, cfg.tv_variant);
      worst = std::max(worst, (q - previous) / std::abs(previous));
      previous = q;
      ++checked;
    });
  }
  return {worst <= 1e-10, fmt("%g steps, max relative increase %.3g (limit 1e-10)", static_cast<double>(checked), worst)};
}

Outcome tv_solution_agreement() {
  const std::size_t n = 16;
  const double sigma = 0.005;
  const Kernel k = make_kernel(kernel_spec::Average{3});
  const Image truth = make_piecewise_constant_phantom(n);
  const Image f = degrade(truth, k, sigma, 6);
  SolverConfig cfg;
  cfg.mu = 0.05 / (sigma * sigma);  // default tol and iteration caps
  const Image reference = oracle::reference_tv_solve(f, k, cfg.mu, TvVariant::kIsotropic);
  const IterateTrace t3 = ftvd3_solve(f, k, cfg);
  const IterateTrace t4 = ftvd4_solve(f, k, cfg);
  const Image& u3 = *t3.final_stage().u;
  const Image& u4 = *t4.final_stage().u;
  const double e3 = rel_l2(u3, reference);
  const double e4 = rel_l2(u4, reference);
  const double e34 = rel_l2(u3, u4);
  return {e3 <= 5e-3 && e4 <= 5e-3 && e34 <= 1e-2,
          fmt("ftvd3-ref %.3g, ftvd4-ref %.3g (limit 5e-3), ftvd3-ftvd4 %.3g (limit 1e-2)", e3, e4, e34)};
}

SolverConfig default_experiment_config(double sigma) {
  SolverConfig cfg;
  cfg.mu = 0.05 / (sigma * sigma);
  return cfg;
}

struct DefaultProblem {
  Kernel kernel = make_kernel(kernel_spec::Average{9});
  Image truth = make_phantom(128);
  Image f = degrade(truth, kernel, 0.01, 0);
  SpectralCache cache{kernel, 128};
  SolverConfig cfg = default_experiment_config(0.01);
};

const DefaultProblem& default_problem() {
  static const DefaultProblem p;
  return p;
}

Outcome constraint_feasibility() {
  const DefaultProblem& p = default_problem();
  const IterateTrace t4 = ftvd4_solve(p.f, p.cache, p.cfg, &p.truth);
  const double r4 = t4.final_stage().constraint_residual;
  const IterateTrace t3 = ftvd3_solve(p.f, p.cache, p.cfg, &p.truth);
  const auto stages = t3.stage_positions();
  bool strictly = true;
  for (std::size_t i = 1; i < stages.size(); ++i) {
    strictly = strictly && t3.records[stages[i]].constraint_residual < t3.records[stages[i - 1]].constraint_residual;
  }
  const double drop = t3.records[stages.front()].constraint_residual / t3.records[stages.back()].constraint_residual;
  const bool ok4 = t4.converged && r4 <= 10.0 * p.cfg.tol;
  return {ok4 && strictly && drop >= 10.0,
          fmt("ftvd4 residual %.3g (limit %.3g), ftvd3 stage drop %.1fx (need 10x)", r4, 10.0 * p.cfg.tol, drop) +
              (t4.converged ? "" : ", ftvd4 not converged") + (strictly ? "" : ", ftvd3 not strictly decreasing")};
}

Outcome early_peak() {
  const DefaultProblem& p = default_problem();
  std::string detail;
  bool ok = true;
  for (SolverChoice s : {SolverChoice::kFtvd3, SolverChoice::kFtvd4}) {
    const IterateTrace t = s == SolverChoice::kFtvd3 ? ftvd3_solve(p.f, p.cache, p.cfg, &p.truth)
                                                     : ftvd4_solve(p.f, p.cache, p.cfg, &p.truth);
    const IterateRecord& best = t.records[best_iterate(t, BestBy::kSnr)];
    const IterateRecord& last = t.final_stage();
    ok = ok && best.stage_index < last.stage_index && *best.snr_db >= *last.snr_db;
    if (!detail.empty()) detail += "; ";
    detail += std::string(to_string(s)) + fmt(" best stage %g (%.4f dB), final stage %g", best.stage_index,
                                              *best.snr_db, last.stage_index) +
              fmt(" (%.4f dB)", *last.snr_db);
  }
  return {ok, detail};
}

Outcome decomposition_checks() {
  std::mt19937_64 rng(1009);
  std::uniform_int_distribution<std::size_t> size(4, 32);
  double additivity = 0.0;
  double orthogonality = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = size(rng);
    const SpectralCache cache(make_kernel(kernel_spec::Delta{}), n);
    const Image u = random_image(n, rng);
    // Half the cases use a nearly integrable field, as produced by the solvers.
    GradientField w = random_field(n, rng);
    if (trial % 2 == 0) w = forward_diff(u) + 0.01 * w;
    const Decomposition d = decompose(u, w, cache);
    additivity = std::max(additivity, max_abs_diff(d.u1 + d.u2, u));
    const GradientField residual = w - forward_diff(d.u1);
    // Orthogonal to every gradient field iff D^T residual vanishes.
    orthogonality = std::max(orthogonality, divergence_adjoint(residual).norm() / std::max(1.0, w.norm()));
  }
  return {additivity <= 1e-12 && orthogonality <= 1e-9,
          fmt("additivity %.3g (limit 1e-12), orthogonality %.3g (limit 1e-9)", additivity, orthogonality)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism(const fs::path& work) {
  ExperimentConfig cfg;
  cfg.solver = SolverChoice::kFtvd4;
  cfg.save_intermediates = false;
  cfg.seed = 11;
  std::string traces[2];
  for (int i = 0; i < 2; ++i) {
    cfg.output_dir = work / ("determinism_" + std::to_string(i));
    fs::remove_all(cfg.output_dir);
    run_experiment(cfg);
    traces[i] = slurp(cfg.output_dir / "trace.csv");
  }
  const bool ok = !traces[0].empty() && traces[0] == traces[1];
  return {ok, fmt("trace.csv %g bytes, identical: ", static_cast<double>(traces[0].size())) + (ok ? "yes" : "no")};
}

struct Criterion {
  const char* name;
  double budget_s;  // 0 means unbounded
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  fs::path work = fs::temp_directory_path() / "ftvd_acceptance";
  app.add_option("--work-dir", work, "scratch directory for experiment runs");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(work);

  const std::vector<Criterion> criteria = {
      {"operators match dense oracle", 5.0, operators_match_dense},
      {"difference operator adjointness", 0.0, adjointness},
      {"u-subproblem exactness", 0.0, solve_u_matches_dense},
      {"shrinkage optimality", 0.0, shrink_optimality},
      {"penalty objective descent", 0.0, penalty_descent},
      {"TV solution agreement", 60.0, tv_solution_agreement},
      {"constraint feasibility", 0.0, constraint_feasibility},
      {"early SNR peak", 120.0, early_peak},
      {"decomposition", 0.0, decomposition_checks},
      {"trace determinism", 0.0, [&] { return determinism(work); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs >= c.budget_s) {
      out.pass = false;
      out.detail += fmt(", over time budget %.0f s", c.budget_s);
    }
    if (!out.pass) ++failures;
    std::printf("%s %2zu %-32s %7.2fs  %s\n", out.pass ? "PASS" : "FAIL", i + 1, c.name, secs, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
