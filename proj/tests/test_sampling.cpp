#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "hodgesamp/datasets.hpp"
#include "hodgesamp/error.hpp"
#include "hodgesamp/recovery.hpp"
#include "hodgesamp/sampling.hpp"
#include "hodgesamp/signals.hpp"
#include "oracle.hpp"

using namespace hodgesamp;

namespace {

Eigen::MatrixXd random_matrix(Index r, Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Eigen::MatrixXd m(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) m(i, j) = n(rng);
  return m;
}

}  // namespace

TEST(Aggregate, SingleShiftIsSignal) {
  const auto l1 = hodge_laplacians(small_complex()).l1;
  const Eigen::VectorXd x = random_matrix(10, 1, 1);
  const auto y = aggregate(l1, x, 1);
  ASSERT_EQ(y.cols(), 1);
  EXPECT_EQ(y.col(0), x);
}

TEST(Aggregate, HarmonicShiftsVanish) {
  const auto c = small_complex();
  const auto laps = hodge_laplacians(c);
  const auto b = make_spectral_bases(c, decompose_laplacians(laps), 4, 1);
  const Eigen::VectorXd r1 = b.q1_perp * Eigen::Vector2d(0.7, -1.3);
  const auto y = aggregate(laps.l1, r1, 6);
  for (Index p = 1; p < 6; ++p) EXPECT_LE(y.col(p).norm(), 1e-8 * r1.norm());
}

TEST(Aggregate, MatchesDensePower) {
  const Eigen::MatrixXd a = random_matrix(8, 8, 3);
  const Eigen::MatrixXd m = a + a.transpose();
  const Eigen::VectorXd x = random_matrix(8, 1, 4);
  const auto y = aggregate(m, x, 4);
  const Eigen::VectorXd ref = oracle::matrix_power_apply(m, x, 3);
  EXPECT_LE((y.col(3) - ref).norm(), 1e-10 * ref.norm());
}

TEST(Aggregate, Errors) {
  EXPECT_THROW(aggregate(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(4), 2), Error);
  EXPECT_THROW(aggregate(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(3), 0), Error);
}

TEST(Aggregate, SplitsBySubspace) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = oracle::random_complex(seed + 900, 16, 0.45, 0.5);
    const auto laps = hodge_laplacians(c);
    const auto spectra = decompose_laplacians(laps);
    const auto b = make_spectral_bases(c, spectra, range_dimension(spectra.l0), range_dimension(spectra.l2));
    const auto x = synthesize_bandlimited(b, b.w0(), b.w2(), b.harmonic_dim(), seed);
    const auto y = aggregate(laps.l1, x.x1, 6);
    for (int p = 0; p <= 5; ++p) {
      const Eigen::VectorXd split = oracle::matrix_power_apply(laps.l_low, c.b1().transpose() * x.x0, p) +
                                    oracle::matrix_power_apply(laps.l_up, c.b2() * x.x2, p) +
                                    oracle::matrix_power_apply(laps.l1, x.r1, p);
      EXPECT_LE((y.col(p) - split).norm(), 1e-9 * (1.0 + split.norm())) << "seed " << seed << " p " << p;
    }
  }
}

TEST(ChooseSamplingSet, FullSetRegardlessOfSeed) {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    const auto sel = choose_sampling_set(10, 10, seed);
    std::vector<Index> all(10);
    std::iota(all.begin(), all.end(), Index{0});
    EXPECT_EQ(sel.indices, all);
  }
}

TEST(ChooseSamplingSet, Deterministic) {
  const auto a = choose_sampling_set(10, 2, 1234);
  const auto b = choose_sampling_set(10, 2, 1234);
  EXPECT_EQ(a.indices, b.indices);
  ASSERT_EQ(a.indices.size(), 2u);
  EXPECT_LT(a.indices[0], a.indices[1]);
  EXPECT_EQ(a.attempts, 1);
}

TEST(ChooseSamplingSet, RoughlyUniform) {
  std::vector<int> hits(10, 0);
  for (std::uint64_t seed = 0; seed < 5000; ++seed)
    for (Index i : choose_sampling_set(10, 2, seed).indices) ++hits[i];
  for (int h : hits) EXPECT_NEAR(h, 1000, 150);
}

TEST(ChooseSamplingSet, RankGuardOnSmallComplex) {
  const auto c = small_complex();
  const auto laps = hodge_laplacians(c);
  const auto b = make_spectral_bases(c, decompose_laplacians(laps), 4, 1);
  const auto d = recovery_dictionary(b, 2);
  const auto v = build_vandermonde(b.lambda_low, b.lambda_up, 2, 6);
  int parallel_harmonic_rows = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sel = choose_sampling_set(10, 2, seed, d, 1000);
    EXPECT_EQ(numerical_rank(select_rows(d, sel.indices)), 2);
    if (numerical_rank(select_rows(b.q1_perp, sel.indices)) < 2) ++parallel_harmonic_rows;

    // Full column rank of the system forces independent harmonic rows.
    auto guard = [&](std::span<const Index> rows) {
      return numerical_rank(khatri_rao_system(v, select_rows(d, rows))) == 7;
    };
    const auto strict = choose_sampling_set(10, 2, seed, guard, 1000);
    EXPECT_EQ(numerical_rank(select_rows(b.q1_perp, strict.indices)), 2);
  }
  // Rank 2 across all of D does not imply rank 2 on its harmonic block.
  EXPECT_GT(parallel_harmonic_rows, 0);
}

TEST(ChooseSamplingSet, Errors) {
  EXPECT_THROW(choose_sampling_set(10, 0, 1), Error);
  EXPECT_THROW(choose_sampling_set(10, 11, 1), Error);
  try {
    choose_sampling_set(10, 2, 1, [](std::span<const Index>) { return false; }, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::retries_exhausted);
  }
}

TEST(Observe, FullSetIsIdentity) {
  const Eigen::MatrixXd y = random_matrix(5, 3, 8);
  SamplingPlan plan{3, {0, 1, 2, 3, 4}, 0};
  EXPECT_EQ(observe(y, plan).z1_matrix, y);
}

TEST(Observe, SingleRow) {
  const Eigen::MatrixXd y = random_matrix(10, 6, 9);
  const auto obs = observe(y, SamplingPlan{6, {3}, 0});
  ASSERT_EQ(obs.z1_matrix.rows(), 1);
  EXPECT_EQ(obs.z1_matrix.row(0), y.row(3));
}

TEST(Observe, ColumnMajorVectorization) {
  const Eigen::MatrixXd y = random_matrix(10, 4, 10);
  const auto obs = observe(y, SamplingPlan{4, {1, 4, 8}, 0});
  for (Index p = 0; p < 4; ++p)
    for (Index i = 0; i < 3; ++i) EXPECT_EQ(obs.z1_vec(p * 3 + i), obs.z1_matrix(i, p));
}

TEST(Observe, Errors) {
  const Eigen::MatrixXd y = random_matrix(5, 2, 1);
  try {
    observe(y, SamplingPlan{2, {0, 5}, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::index_out_of_range);
  }
  EXPECT_THROW(observe(y, SamplingPlan{2, {2, 1}, 0}), Error);
  EXPECT_THROW(observe(y, SamplingPlan{2, {}, 0}), Error);
  EXPECT_THROW(observe(y, SamplingPlan{3, {0}, 0}), Error);
}

TEST(Observe, LinearInSignal) {
  const auto l1 = hodge_laplacians(small_complex()).l1;
  const SamplingPlan plan{5, {2, 7}, 0};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::VectorXd a = random_matrix(10, 1, seed), b = random_matrix(10, 1, seed + 50);
    const Eigen::VectorXd lhs = observe(aggregate(l1, 2.0 * a - 0.5 * b, 5), plan).z1_vec;
    const Eigen::VectorXd rhs =
        2.0 * observe(aggregate(l1, a, 5), plan).z1_vec - 0.5 * observe(aggregate(l1, b, 5), plan).z1_vec;
    EXPECT_LE((lhs - rhs).norm(), 1e-10 * (1.0 + rhs.norm()));
  }
}

TEST(NumericalRank, Basics) {
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Identity(4, 4)), 4);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Zero(3, 3)), 0);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Ones(3, 5)), 1);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd(0, 3)), 0);
}
