#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ftvd/error.hpp"
#include "ftvd/metrics.hpp"
#include "test_util.hpp"

namespace ftvd {
namespace {

using testing::random_image;

IterateTrace trace_with_snrs(const std::vector<double>& snrs) {
  IterateTrace trace;
  for (std::size_t i = 0; i < snrs.size(); ++i) {
    IterateRecord r;
    r.stage_index = static_cast<int>(i);
    r.snr_db = snrs[i];
    r.objective_tv = -snrs[i];
    trace.records.push_back(r);
  }
  return trace;
}

TEST(Snr, ExactMatchIsCapped) {
  std::mt19937_64 rng(71);
  const Image ref = random_image(8, rng);
  EXPECT_EQ(snr_db(ref, ref), kSnrCapDb);
}

TEST(Snr, ConstantOffsetClosedForm) {
  const Image ref(2, {0.0, 1.0, 0.0, 1.0});
  Image u = ref;
  for (double& v : u.values()) v += 0.1;
  // signal energy 4 * 0.25 = 1, error energy 4 * 0.01
  EXPECT_NEAR(snr_db(u, ref), 10.0 * std::log10(1.0 / 0.04), 1e-12);
}

TEST(Snr, DoublingErrorCostsSixDecibels) {
  std::mt19937_64 rng(72);
  const Image ref = random_image(16, rng);
  const Image err = random_image(16, rng, -0.1, 0.1);
  EXPECT_NEAR(snr_db(ref + err, ref) - snr_db(ref + 2.0 * err, ref), 20.0 * std::log10(2.0), 1e-12);
}

TEST(Snr, InvariantToSharedShift) {
  std::mt19937_64 rng(73);
  const Image ref = random_image(8, rng);
  const Image u = random_image(8, rng);
  Image ref_s = ref;
  Image u_s = u;
  for (double& v : ref_s.values()) v += 5.0;
  for (double& v : u_s.values()) v += 5.0;
  EXPECT_NEAR(snr_db(u_s, ref_s), snr_db(u, ref), 1e-9);
}

TEST(Snr, ConstantReferenceRejected) {
  try {
    snr_db(Image(4, 0.1), Image(4, 0.5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDegenerateReference);
  }
}

TEST(RelChange, Cases) {
  const Image a(2, {3.0, 0.0, 0.0, 4.0});
  EXPECT_EQ(rel_change(a, a), 0.0);
  EXPECT_DOUBLE_EQ(rel_change(Image(2), a), 1.0);
  EXPECT_DOUBLE_EQ(rel_change(2.0 * a, a), 1.0);
  // Zero previous iterate uses the 1e-12 floor instead of dividing by zero.
  EXPECT_TRUE(std::isfinite(rel_change(a, Image(2))));
}

TEST(BestIterate, EarliestMaximum) {
  EXPECT_EQ(best_iterate(trace_with_snrs({3, 7, 7, 5}), BestBy::kSnr), 1u);
  EXPECT_EQ(best_iterate(trace_with_snrs({3, 7, 7, 5}), BestBy::kObjectiveTv), 1u);
  EXPECT_EQ(best_iterate(trace_with_snrs({4}), BestBy::kSnr), 0u);
}

TEST(BestIterate, StableUnderWorseAppends) {
  IterateTrace trace = trace_with_snrs({1, 9, 4});
  const std::size_t before = best_iterate(trace, BestBy::kSnr);
  for (double s : {8.0, 2.0, 9.0}) {
    trace.records.push_back(trace.records.back());
    trace.records.back().snr_db = s;
    EXPECT_EQ(best_iterate(trace, BestBy::kSnr), before);
  }
}

TEST(BestIterate, IgnoresInnerRecords) {
  IterateTrace trace = trace_with_snrs({1, 2});
  IterateRecord inner;
  inner.kind = RecordKind::kInner;
  inner.snr_db = 50.0;
  trace.records.insert(trace.records.begin(), inner);
  EXPECT_EQ(best_iterate(trace, BestBy::kSnr), 2u);
}

TEST(BestIterate, MissingScores) {
  EXPECT_THROW(best_iterate(IterateTrace{}, BestBy::kSnr), Error);
  IterateTrace trace = trace_with_snrs({1, 2});
  trace.records[1].snr_db.reset();
  try {
    best_iterate(trace, BestBy::kSnr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kMissingScores);
  }
  EXPECT_EQ(best_iterate(trace, BestBy::kObjectiveTv), 1u);
}

}  // namespace
}  // namespace ftvd
