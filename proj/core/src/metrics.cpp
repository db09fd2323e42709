#include "ftvd/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ftvd/error.hpp"

namespace ftvd {

double snr_db(const Image& u, const Image& reference) {
  if (u.size() != reference.size()) throw Error(Errc::kShapeMismatch, "snr operands differ in size");
  const double ref_mean = reference.mean();
  double signal = 0.0;
  double error = 0.0;
  const auto uv = u.values();
  const auto rv = reference.values();
  for (std::size_t i = 0; i < rv.size(); ++i) {
    const double s = rv[i] - ref_mean;
    const double e = uv[i] - rv[i];
    signal += s * s;
    error += e * e;
  }
  if (signal == 0.0) throw Error(Errc::kDegenerateReference, "reference image is constant");
  if (error == 0.0) return kSnrCapDb;
  return std::min(kSnrCapDb, 10.0 * std::log10(signal / error));
}

double rel_change(const Image& u_new, const Image& u_old) {
  return (u_new - u_old).norm() / std::max(u_old.norm(), 1e-12);
}

std::size_t best_iterate(const IterateTrace& trace, BestBy criterion) {
  const auto stages = trace.stage_positions();
  if (stages.empty()) throw Error(Errc::kMissingScores, "trace has no stage records");

  std::size_t best = stages.front();
  double best_score = 0.0;
  bool first = true;
  for (std::size_t pos : stages) {
    const IterateRecord& rec = trace.records[pos];
    double score = 0.0;
    if (criterion == BestBy::kSnr) {
      if (!rec.snr_db) throw Error(Errc::kMissingScores, "record has no SNR (no ground truth supplied)");
      score = *rec.snr_db;
    } else {
      score = -rec.objective_tv;
    }
    if (first || score > best_score) {
      best = pos;
      best_score = score;
      first = false;
    }
  }
  return best;
}

}  // namespace ftvd
