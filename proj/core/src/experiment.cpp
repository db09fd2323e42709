#include "ftvd/experiment.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ftvd/decomposition.hpp"
#include "ftvd/degrade.hpp"
#include "ftvd/error.hpp"
#include "ftvd/metrics.hpp"
#include "ftvd/pgm.hpp"
#include "ftvd/phantom.hpp"
#include "ftvd/solvers.hpp"
#include "ftvd/spectral.hpp"

namespace ftvd {

namespace fs = std::filesystem;

SolverChoice parse_solver_choice(const std::string& text) {
  if (text == "ftvd3") return SolverChoice::kFtvd3;
  if (text == "ftvd4") return SolverChoice::kFtvd4;
  throw Error(Errc::kInvalidArgument, "unknown solver '" + text + "' (expected ftvd3 or ftvd4)");
}

const char* to_string(SolverChoice s) noexcept { return s == SolverChoice::kFtvd3 ? "ftvd3" : "ftvd4"; }

TvVariant parse_tv_variant(const std::string& text) {
  if (text == "iso") return TvVariant::kIsotropic;
  if (text == "aniso") return TvVariant::kAnisotropic;
  throw Error(Errc::kInvalidArgument, "unknown tv variant '" + text + "' (expected iso or aniso)");
}

const char* to_string(TvVariant v) noexcept { return v == TvVariant::kIsotropic ? "iso" : "aniso"; }

double ExperimentConfig::resolved_mu() const {
  if (mu) return *mu;
  if (!(sigma > 0.0)) throw Error(Errc::kInvalidArgument, "automatic mu needs sigma > 0; pass mu explicitly");
  return 0.05 / (sigma * sigma);
}

SolverConfig ExperimentConfig::solver_config() const {
  SolverConfig sc;
  sc.mu = resolved_mu();
  sc.tv_variant = tv_variant;
  sc.tol = tol;
  sc.max_inner_iters = max_inner_iters;
  sc.beta_schedule = beta_schedule;
  sc.beta_fixed = beta_fixed;
  sc.max_multiplier_updates = max_multiplier_updates;
  sc.retention = save_intermediates ? FieldRetention::kAll : FieldRetention::kBestAndFinal;
  return sc;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void write_trace_csv(std::ostream& out, const IterateTrace& trace) {
  out << kTraceCsvHeader << '\n';
  for (const IterateRecord& r : trace.records) {
    out << r.stage_index << ',' << r.inner_iter << ',' << format_double(r.beta) << ','
        << (r.snr_db ? format_double(*r.snr_db) : std::string()) << ',' << format_double(r.objective_tv) << ','
        << format_double(r.penalty_objective) << ',' << format_double(r.constraint_residual) << ','
        << format_double(r.rel_change) << '\n';
  }
}

void write_trace_csv(const fs::path& path, const IterateTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot open " + path.string() + " for writing");
  write_trace_csv(out, trace);
  if (!out) throw Error(Errc::kIo, "failed writing " + path.string());
}

namespace {

template <typename T>
T parse_field(const std::string& s, const fs::path& path) {
  T value{};
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) throw Error(Errc::kIo, path.string() + ": bad field '" + s + "'");
  return value;
}

std::ofstream open_text(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::kIo, "cannot open " + path.string() + " for writing");
  return out;
}

std::string stage_file(int stage) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "iter_%04d.pgm", stage);
  return buf.data();
}

// u1 is zero-mean; shift it to mid-grey so both signs survive the [0,1] clamp.
Image displayable_u1(const Image& u1) {
  Image out = u1;
  for (double& v : out.values()) v += 0.5;
  return out;
}

double write_decomposition(const fs::path& dir, const std::string& prefix, const IterateRecord& rec,
                           const SpectralCache& cache) {
  const Decomposition d = decompose(*rec.u, *rec.w, cache);
  write_pgm16(dir / (prefix + "_u1.pgm"), displayable_u1(d.u1));
  write_pgm16(dir / (prefix + "_u2.pgm"), d.u2);
  return d.integrability_residual;
}

}  // namespace

std::vector<TraceRow> read_trace_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kTraceCsvHeader) {
    throw Error(Errc::kIo, path.string() + ": missing or unexpected trace.csv header");
  }
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 8) throw Error(Errc::kIo, path.string() + ": expected 8 fields per row");
    TraceRow row;
    row.stage_index = parse_field<int>(fields[0], path);
    row.inner_iter = parse_field<int>(fields[1], path);
    row.beta = parse_field<double>(fields[2], path);
    if (!fields[3].empty()) row.snr_db = parse_field<double>(fields[3], path);
    row.objective_tv = parse_field<double>(fields[4], path);
    row.penalty_objective = parse_field<double>(fields[5], path);
    row.constraint_residual = parse_field<double>(fields[6], path);
    row.rel_change = parse_field<double>(fields[7], path);
    rows.push_back(row);
  }
  return rows;
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  const Image truth = cfg.input_path.empty() ? make_phantom(cfg.phantom_size) : read_pgm(cfg.input_path);
  const Kernel kernel = make_kernel(cfg.kernel);
  const Image f = cfg.observed_path.empty() ? degrade(truth, kernel, cfg.sigma, cfg.seed) : read_pgm(cfg.observed_path);
  if (f.size() != truth.size()) throw Error(Errc::kShapeMismatch, "observation and ground truth differ in size");

  const SolverConfig sc = cfg.solver_config();
  sc.validate();

  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw Error(Errc::kIo, "cannot create " + cfg.output_dir.string() + ": " + ec.message());

  const SpectralCache cache(kernel, f.size());
  IterateTrace trace;
  try {
    trace = cfg.solver == SolverChoice::kFtvd3 ? ftvd3_solve(f, cache, sc, &truth) : ftvd4_solve(f, cache, sc, &truth);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("solver ") + to_string(cfg.solver) + " failed: " + e.what());
  }

  const fs::path& dir = cfg.output_dir;
  write_trace_csv(dir / "trace.csv", trace);
  write_pgm16(dir / "ground_truth.pgm", truth);
  write_pgm16(dir / "observed.pgm", f);

  const IterateRecord& best = trace.records[best_iterate(trace, BestBy::kSnr)];
  const IterateRecord& last = trace.final_stage();
  write_pgm16(dir / "best.pgm", *best.u);
  write_pgm16(dir / "final.pgm", *last.u);

  ExperimentSummary summary;
  summary.solver = cfg.solver;
  summary.record_count = trace.records.size();
  summary.stage_count = trace.stage_count();
  summary.best_stage = best.stage_index;
  summary.final_stage = last.stage_index;
  summary.best_snr = *best.snr_db;
  summary.final_snr = *last.snr_db;
  summary.observed_snr = snr_db(f, truth);
  summary.converged = trace.converged;
  summary.best_integrability_residual = write_decomposition(dir, "best", best, cache);
  summary.final_integrability_residual = write_decomposition(dir, "final", last, cache);

  if (cfg.save_intermediates) {
    for (std::size_t pos : trace.stage_positions()) {
      const IterateRecord& rec = trace.records[pos];
      if (rec.u) write_pgm16(dir / stage_file(rec.stage_index), *rec.u);
    }
  }

  open_text(dir / "summary.txt") << format_summary(summary);

  auto info = open_text(dir / "run_info.txt");
  info << "solver: " << to_string(cfg.solver) << '\n'
       << "input: " << (cfg.input_path.empty() ? "phantom:" + std::to_string(cfg.phantom_size) : cfg.input_path.string())
       << '\n'
       << "observed: " << (cfg.observed_path.empty() ? "degraded" : cfg.observed_path.string()) << '\n'
       << "n: " << f.size() << '\n'
       << "kernel: " << to_string(cfg.kernel) << '\n'
       << "sigma: " << format_double(cfg.sigma) << '\n'
       << "mu: " << format_double(sc.mu) << (cfg.mu ? "" : " (auto 0.05/sigma^2)") << '\n'
       << "tv_variant: " << to_string(cfg.tv_variant) << '\n'
       << "tol: " << format_double(cfg.tol) << '\n'
       << "max_inner_iters: " << cfg.max_inner_iters << '\n'
       << "max_multiplier_updates: " << cfg.max_multiplier_updates << '\n'
       << "beta_fixed: " << format_double(cfg.beta_fixed) << '\n'
       << "beta_schedule:";
  for (double b : cfg.beta_schedule) info << ' ' << format_double(b);
  info << '\n'
       << "seed: " << cfg.seed << '\n'
       << "noise_generator: " << kNoiseGeneratorName << '\n'
       << "decomposition: least-squares potential of w, u1 zero-mean, u1 images offset by +0.5\n"
       << "converged: " << (trace.converged ? "true" : "false") << '\n';
  return summary;
}

std::string format_summary(const ExperimentSummary& s) {
  std::ostringstream os;
  os << "solver: " << to_string(s.solver) << '\n'
     << "records: " << s.record_count << '\n'
     << "stages: " << s.stage_count << '\n'
     << "observed_snr_db: " << format_double(s.observed_snr) << '\n'
     << "best_stage: " << s.best_stage << '\n'
     << "best_snr_db: " << format_double(s.best_snr) << '\n'
     << "final_stage: " << s.final_stage << '\n'
     << "final_snr_db: " << format_double(s.final_snr) << '\n'
     << "best_minus_final_db: " << format_double(s.best_snr - s.final_snr) << '\n'
     << "best_integrability_residual: " << format_double(s.best_integrability_residual) << '\n'
     << "final_integrability_residual: " << format_double(s.final_integrability_residual) << '\n'
     << "converged: " << (s.converged ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace ftvd
