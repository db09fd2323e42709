#pragma once

#include <cstddef>

#include "ftvd/image.hpp"
#include "ftvd/trace.hpp"

namespace ftvd {

/// Reported in place of +inf when u matches the reference exactly.
inline constexpr double kSnrCapDb = 300.0;

/// 10 log10(|ref - mean(ref)|^2 / |u - ref|^2), capped at kSnrCapDb.
/// Throws Errc::kDegenerateReference for a constant reference.
double snr_db(const Image& u, const Image& reference);

/// |u_new - u_old| / max(|u_old|, 1e-12)
double rel_change(const Image& u_new, const Image& u_old);

enum class BestBy { kSnr, kObjectiveTv };

/// Position in trace.records of the best stage record (max SNR or min TV
/// objective), earliest on ties. Throws Errc::kMissingScores when the trace
/// is empty or an SNR is absent.
std::size_t best_iterate(const IterateTrace& trace, BestBy criterion);

}  // namespace ftvd
