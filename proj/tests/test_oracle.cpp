#include <gtest/gtest.h>

#include <random>

#include "ftvd/degrade.hpp"
#include "ftvd/error.hpp"
#include "ftvd/oracle.hpp"
#include "ftvd/phantom.hpp"
#include "test_util.hpp"

namespace ftvd::oracle {
namespace {

using ftvd::testing::random_image;

TEST(DenseOperator, TwoByTwoDifferenceMatrix) {
  const Eigen::MatrixXd d = dense_operator(OperatorKind::kD, 2);
  ASSERT_EQ(d.rows(), 8);
  ASSERT_EQ(d.cols(), 4);
  Eigen::MatrixXd expected(8, 4);
  // dx rows (pixel order 00, 01, 10, 11), then dy rows.
  expected << -1, 1, 0, 0,
               1, -1, 0, 0,
               0, 0, -1, 1,
               0, 0, 1, -1,
              -1, 0, 1, 0,
               0, -1, 0, 1,
               1, 0, -1, 0,
               0, 1, 0, -1;
  EXPECT_EQ(d, expected);
}

TEST(DenseOperator, DeltaKernelIsIdentity) {
  const Kernel delta = make_kernel(kernel_spec::Delta{});
  EXPECT_EQ(dense_operator(OperatorKind::kK, 5, &delta), Eigen::MatrixXd::Identity(25, 25));
}

TEST(DenseOperator, TransposeIsExact) {
  EXPECT_EQ(dense_operator(OperatorKind::kDt, 6), dense_operator(OperatorKind::kD, 6).transpose());
}

TEST(DenseOperator, ActionMatchesForwardDiffOnRandomImages) {
  std::mt19937_64 rng(41);
  const Eigen::MatrixXd d = dense_operator(OperatorKind::kD, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const Image u = random_image(8, rng);
    EXPECT_LE(max_abs_diff(to_field(d * vectorize(u), 8), forward_diff(u)), 1e-12);
  }
}

TEST(DenseOperator, SizeGuard) {
  try {
    dense_operator(OperatorKind::kD, kMaxDenseSide + 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kTooLarge);
  }
  EXPECT_THROW(dense_operator(OperatorKind::kK, 4), Error);
}

TEST(ReferenceTvSolve, ConstantObservationIsFixedPoint) {
  const Image f(8, 0.4);
  const Image u = reference_tv_solve(f, make_kernel(kernel_spec::Delta{}), 10.0, TvVariant::kIsotropic);
  EXPECT_LE(max_abs_diff(u, f), 1e-12);
}

TEST(ReferenceTvSolve, HugeFidelityReturnsObservation) {
  std::mt19937_64 rng(42);
  const Image f = random_image(8, rng);
  const Image u = reference_tv_solve(f, make_kernel(kernel_spec::Delta{}), 1e8, TvVariant::kIsotropic);
  EXPECT_LE(max_abs_diff(u, f), 1e-3);
}

TEST(ReferenceTvSolve, BeatsObservationOnSmoothedObjective) {
  const Kernel k = make_kernel(kernel_spec::Average{3});
  const Image truth = make_piecewise_constant_phantom(16);
  const Image f = degrade(truth, k, 0.01, 5);
  for (TvVariant variant : {TvVariant::kIsotropic, TvVariant::kAnisotropic}) {
    const Image u = reference_tv_solve(f, k, 500.0, variant);
    EXPECT_LT(smoothed_tv_objective(u, f, k, 500.0, 1e-6, variant),
              smoothed_tv_objective(f, f, k, 500.0, 1e-6, variant));
  }
}

TEST(ReferenceTvSolve, RejectsOversizedProblems) {
  EXPECT_THROW(reference_tv_solve(Image(kMaxDenseSide + 1), make_kernel(kernel_spec::Delta{}), 1.0,
                                  TvVariant::kIsotropic),
               Error);
}

TEST(ReferenceTvSolve, IterationCapRaisesNoConvergence) {
  std::mt19937_64 rng(43);
  const Image f = random_image(8, rng);
  ReferenceOptions options;
  options.max_iterations = 1;
  try {
    reference_tv_solve(f, make_kernel(kernel_spec::Average{3}), 50.0, TvVariant::kIsotropic, options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kNoConvergence);
  }
}

}  // namespace
}  // namespace ftvd::oracle
