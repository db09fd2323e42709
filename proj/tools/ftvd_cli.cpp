// ftvd: command line front end for the TV deconvolution experiments.
//
//   ftvd phantom --size 128 --output truth.pgm
//   ftvd degrade --input-path truth.pgm --output observed.pgm --kernel average:9 --sigma 0.01
//   ftvd deblur  --input-path truth.pgm --output-dir out --solver ftvd3
//   ftvd report  --trace out/trace.csv
//
// Exit status: 0 success, 1 usage or IO error, 2 numerical failure.

#include <charconv>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ftvd/degrade.hpp"
#include "ftvd/error.hpp"
#include "ftvd/experiment.hpp"
#include "ftvd/grid_ops.hpp"
#include "ftvd/pgm.hpp"
#include "ftvd/phantom.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

std::vector<double> parse_beta_list(const std::string& text) {
  if (text == "default") return ftvd::default_beta_schedule();
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw ftvd::Error(ftvd::Errc::kInvalidArgument, "bad beta value '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::optional<double> parse_mu(const std::string& text) {
  if (text == "auto") return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ftvd::Error(ftvd::Errc::kInvalidArgument, "mu must be a number or 'auto'");
  }
  return v;
}

struct DeblurArgs {
  std::string input_path;
  std::string observed_path;
  std::string output_dir = "ftvd_out";
  std::size_t phantom_size = 128;
  std::string solver = "ftvd3";
  std::string kernel = "average:9";
  double sigma = 0.01;
  std::string mu = "auto";
  std::string beta_schedule = "default";
  double beta_fixed = 10.0;
  std::uint64_t seed = 0;
  std::string tv_variant = "iso";
  bool save_intermediates = false;
  double tol = 1e-4;
  int max_inner_iters = 100;
  int max_multiplier_updates = 500;

  ftvd::ExperimentConfig to_config() const {
    ftvd::ExperimentConfig cfg;
    cfg.input_path = input_path;
    cfg.observed_path = observed_path;
    cfg.output_dir = output_dir;
    cfg.phantom_size = phantom_size;
    cfg.solver = ftvd::parse_solver_choice(solver);
    cfg.kernel = ftvd::parse_kernel_spec(kernel);
    cfg.sigma = sigma;
    cfg.mu = parse_mu(mu);
    cfg.beta_schedule = parse_beta_list(beta_schedule);
    cfg.beta_fixed = beta_fixed;
    cfg.seed = seed;
    cfg.tv_variant = ftvd::parse_tv_variant(tv_variant);
    cfg.save_intermediates = save_intermediates;
    cfg.tol = tol;
    cfg.max_inner_iters = max_inner_iters;
    cfg.max_multiplier_updates = max_multiplier_updates;
    return cfg;
  }
};

int report(const std::string& trace_path) {
  const auto rows = ftvd::read_trace_csv(trace_path);
  if (rows.empty()) throw ftvd::Error(ftvd::Errc::kMissingScores, "trace has no rows");
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].snr_db) throw ftvd::Error(ftvd::Errc::kMissingScores, "trace rows carry no SNR");
    if (*rows[i].snr_db > *rows[best].snr_db) best = i;
  }
  const auto& last = rows.back();
  std::cout << "rows: " << rows.size() << '\n'
            << "best_stage: " << rows[best].stage_index << '\n'
            << "best_snr_db: " << ftvd::format_double(*rows[best].snr_db) << '\n'
            << "final_stage: " << last.stage_index << '\n'
            << "final_snr_db: " << ftvd::format_double(*last.snr_db) << '\n'
            << "best_minus_final_db: " << ftvd::format_double(*rows[best].snr_db - *last.snr_db) << '\n'
            << "final_constraint_residual: " << ftvd::format_double(last.constraint_residual) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total-variation deconvolution with recorded intermediate iterates"};
  app.require_subcommand(1);

  auto* phantom_cmd = app.add_subcommand("phantom", "Write a synthetic ground-truth image");
  std::size_t phantom_size = 128;
  std::string phantom_kind = "scene";
  std::string phantom_out = "phantom.pgm";
  std::uint64_t phantom_seed = 0;
  phantom_cmd->add_option("--size", phantom_size, "Image side in pixels")->check(CLI::Range(2, 1 << 14));
  phantom_cmd->add_option("--kind", phantom_kind, "scene | piecewise | random")
      ->check(CLI::IsMember({"scene", "piecewise", "random"}));
  phantom_cmd->add_option("--seed", phantom_seed, "Seed for --kind random");
  phantom_cmd->add_option("--output", phantom_out, "Output PGM path");

  auto* degrade_cmd = app.add_subcommand("degrade", "Blur and add Gaussian noise to an image");
  std::string degrade_in;
  std::string degrade_out = "observed.pgm";
  std::string degrade_kernel = "average:9";
  double degrade_sigma = 0.01;
  std::uint64_t degrade_seed = 0;
  degrade_cmd->add_option("--input-path", degrade_in, "Ground-truth PGM")->required();
  degrade_cmd->add_option("--output", degrade_out, "Output PGM path");
  degrade_cmd->add_option("--kernel", degrade_kernel, "average:M | gaussian:M:S | delta");
  degrade_cmd->add_option("--sigma", degrade_sigma, "Noise standard deviation")->check(CLI::NonNegativeNumber);
  degrade_cmd->add_option("--seed", degrade_seed, "Noise seed");

  auto* deblur_cmd = app.add_subcommand("deblur", "Degrade, solve and record every iterate");
  DeblurArgs d;
  deblur_cmd->add_option("--input-path", d.input_path, "Ground-truth PGM (default: built-in phantom)");
  deblur_cmd->add_option("--observed-path", d.observed_path, "Use this observation instead of degrading");
  deblur_cmd->add_option("--output-dir", d.output_dir, "Directory for trace.csv and images");
  deblur_cmd->add_option("--phantom-size", d.phantom_size, "Side of the built-in phantom");
  deblur_cmd->add_option("--solver", d.solver, "ftvd3 | ftvd4")->check(CLI::IsMember({"ftvd3", "ftvd4"}));
  deblur_cmd->add_option("--kernel", d.kernel, "average:M | gaussian:M:S | delta");
  deblur_cmd->add_option("--sigma", d.sigma, "Noise standard deviation")->check(CLI::NonNegativeNumber);
  deblur_cmd->add_option("--mu", d.mu, "Fidelity weight or 'auto' (0.05/sigma^2)");
  deblur_cmd->add_option("--beta-schedule", d.beta_schedule, "Comma-separated ascending betas or 'default'");
  deblur_cmd->add_option("--beta-fixed", d.beta_fixed, "Penalty weight for ftvd4");
  deblur_cmd->add_option("--seed", d.seed, "Noise seed");
  deblur_cmd->add_option("--tv-variant", d.tv_variant, "iso | aniso")->check(CLI::IsMember({"iso", "aniso"}));
  deblur_cmd->add_flag("--save-intermediates", d.save_intermediates, "Write iter_NNNN.pgm for every stage");
  deblur_cmd->add_option("--tol", d.tol, "Relative-change stopping tolerance");
  deblur_cmd->add_option("--max-inner-iters", d.max_inner_iters, "Inner iteration cap per beta (ftvd3)");
  deblur_cmd->add_option("--max-multiplier-updates", d.max_multiplier_updates, "Iteration cap (ftvd4)");

  auto* report_cmd = app.add_subcommand("report", "Summarize a trace.csv");
  std::string trace_path = "trace.csv";
  report_cmd->add_option("--trace", trace_path, "trace.csv to summarize");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*phantom_cmd) {
      ftvd::Image u = phantom_kind == "scene"       ? ftvd::make_phantom(phantom_size)
                      : phantom_kind == "piecewise" ? ftvd::make_piecewise_constant_phantom(phantom_size)
                                                    : ftvd::make_random_piecewise_constant(phantom_size, phantom_seed);
      ftvd::write_pgm16(phantom_out, u);
    } else if (*degrade_cmd) {
      const ftvd::Image u0 = ftvd::read_pgm(degrade_in);
      const ftvd::Kernel k = ftvd::make_kernel(ftvd::parse_kernel_spec(degrade_kernel));
      ftvd::write_pgm16(degrade_out, ftvd::degrade(u0, k, degrade_sigma, degrade_seed));
    } else if (*deblur_cmd) {
      const ftvd::ExperimentSummary summary = ftvd::run_experiment(d.to_config());
      std::cout << ftvd::format_summary(summary);
    } else if (*report_cmd) {
      return report(trace_path);
    }
  } catch (const ftvd::Error& e) {
    std::cerr << "ftvd: " << e.what() << '\n';
    return e.is_numerical() ? kExitNumerical : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ftvd: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
