#include <cmath>

#include <gtest/gtest.h>

#include "hodgesamp/datasets.hpp"
#include "hodgesamp/error.hpp"
#include "hodgesamp/spectral.hpp"
#include "oracle.hpp"

using namespace hodgesamp;

namespace {

SimplicialComplex filled_triangle() { return build_complex(3, {{0, 1}, {0, 2}, {1, 2}}, {{0, 1, 2}}); }

void expect_valid_eigensystem(const Eigen::MatrixXd& m, const EigenSystem& es) {
  const double lmax = es.size() ? es.eigenvalues.maxCoeff() : 0.0;
  const Eigen::MatrixXd& q = es.eigenvectors;
  EXPECT_LE((m * q - q * es.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff(), 1e-8 * (1.0 + lmax));
  EXPECT_LE((q.transpose() * q - Eigen::MatrixXd::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff(), 1e-10);
  for (Index i = 1; i < es.size(); ++i) EXPECT_LE(es.eigenvalues(i - 1), es.eigenvalues(i));
}

}  // namespace

TEST(Eigendecompose, Identity) {
  const auto es = eigendecompose_symmetric(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_TRUE(es.eigenvalues.isApprox(Eigen::VectorXd::Ones(3)));
  expect_valid_eigensystem(Eigen::MatrixXd::Identity(3, 3), es);
}

TEST(Eigendecompose, TriangleGraphLaplacian) {
  const auto l0 = hodge_laplacians(filled_triangle()).l0;
  const auto es = eigendecompose_symmetric(l0);
  EXPECT_NEAR(es.eigenvalues(0), 0.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues(1), 3.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues(2), 3.0, 1e-12);
  expect_valid_eigensystem(l0, es);
}

TEST(Eigendecompose, ZeroMatrix) {
  const auto es = eigendecompose_symmetric(Eigen::MatrixXd::Zero(2, 2));
  EXPECT_EQ(es.eigenvalues, Eigen::VectorXd::Zero(2));
}

TEST(Eigendecompose, EmptyAndNonSquare) {
  EXPECT_EQ(eigendecompose_symmetric(Eigen::MatrixXd(0, 0)).size(), 0);
  try {
    eigendecompose_symmetric(Eigen::MatrixXd::Zero(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_square);
  }
}

TEST(Eigendecompose, SignConvention) {
  const auto es = eigendecompose_symmetric(hodge_laplacians(small_complex()).l1);
  for (Index k = 0; k < es.size(); ++k) {
    Index arg = 0;
    es.eigenvectors.col(k).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(es.eigenvectors(arg, k), 0.0);
  }
}

TEST(Eigendecompose, SmallComplexFrozenSpectrum) {
  // Closed forms of the stand-in's node Laplacian spectrum.
  const double r2 = std::sqrt(2.0);
  const Eigen::VectorXd expected =
      (Eigen::VectorXd(7) << 0.0, 2.0 - r2, 4.0 - r2, 2.0 + r2, 4.0, 4.0, 4.0 + r2).finished();
  const auto es = eigendecompose_symmetric(hodge_laplacians(small_complex()).l0);
  EXPECT_LE((es.eigenvalues - expected).cwiseAbs().maxCoeff(), 1e-12);
  const auto es2 = eigendecompose_symmetric(hodge_laplacians(small_complex()).l2);
  EXPECT_LE((es2.eigenvalues - Eigen::Vector2d(3.0, 3.0)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SplitSpectrum, FilledAndHollowTriangle) {
  const auto filled = split_spectrum(eigendecompose_symmetric(hodge_laplacians(filled_triangle()).l1));
  EXPECT_EQ(filled.null_part.size(), 0);
  EXPECT_EQ(filled.range_part.size(), 3);

  const auto hollow_c = build_complex(3, {{0, 1}, {0, 2}, {1, 2}}, {});
  const auto hollow = split_spectrum(eigendecompose_symmetric(hodge_laplacians(hollow_c).l1));
  EXPECT_EQ(hollow.null_part.size(), 1);
  EXPECT_EQ(hollow.range_part.size(), 2);
  EXPECT_EQ(hollow.null_part.eigenvectors.rows(), 3);
}

TEST(SplitSpectrum, TwoHoleHasTwoHarmonics) {
  TwoHoleConfig cfg;
  cfg.num_points = 150;
  const auto th = two_hole_complex(cfg);
  const auto split = split_spectrum(eigendecompose_symmetric(hodge_laplacians(th.complex).l1));
  EXPECT_EQ(split.null_part.size(), 2);
}

TEST(LiftBases, FilledTriangle) {
  const auto c = filled_triangle();
  const auto laps = hodge_laplacians(c);
  const auto split = split_spectrum(eigendecompose_symmetric(laps.l0));
  ASSERT_EQ(split.range_part.size(), 2);
  const auto lifted = lift_bases(c, split.range_part.eigenvectors, Eigen::MatrixXd(1, 0),
                                 split.range_part.eigenvalues, Eigen::VectorXd(0));
  ASSERT_EQ(lifted.u_low.cols(), 2);
  EXPECT_EQ(lifted.u_up.cols(), 0);
  for (Index k = 0; k < 2; ++k) {
    EXPECT_NEAR(lifted.lambda_low(k), 3.0, 1e-12);
    const Eigen::VectorXd u = lifted.u_low.col(k);
    EXPECT_LE((laps.l_low * u - 3.0 * u).norm(), 1e-10);
    EXPECT_NEAR(u.squaredNorm(), 3.0, 1e-12);
  }
}

TEST(LiftBases, EmptyUpperLiftWithoutTriangles) {
  const auto c = build_complex(3, {{0, 1}, {1, 2}}, {});
  const auto spectra = decompose_laplacians(hodge_laplacians(c));
  const auto bases = make_spectral_bases(c, spectra, 2, 0);
  EXPECT_EQ(bases.u_up_tilde.cols(), 0);
  EXPECT_EQ(bases.u_up_tilde.rows(), 2);
}

TEST(LiftBases, RejectsZeroEigenvalue) {
  const auto c = filled_triangle();
  const auto es = eigendecompose_symmetric(hodge_laplacians(c).l0);
  try {
    lift_bases(c, es.eigenvectors.leftCols(1), Eigen::MatrixXd(1, 0), es.eigenvalues.head(1), Eigen::VectorXd(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::zero_eigenvalue);
  }
}

TEST(LiftBases, EigenEquationOnRandomComplexes) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const auto c = oracle::random_complex(seed);
    const auto laps = hodge_laplacians(c);
    const auto spectra = decompose_laplacians(laps);
    const Index r0 = range_dimension(spectra.l0), r2 = range_dimension(spectra.l2);
    const auto b = make_spectral_bases(c, spectra, r0, r2);
    for (Index k = 0; k < b.u_low_tilde.cols(); ++k) {
      const Eigen::VectorXd u = b.u_low_tilde.col(k);
      const double l = b.lambda_low(k);
      EXPECT_LE((laps.l_low * u - l * u).norm(), 1e-8 * l * u.norm());
      EXPECT_NEAR(u.squaredNorm(), l, 1e-9 * (1.0 + l));
    }
    for (Index k = 0; k < b.u_up_tilde.cols(); ++k) {
      const Eigen::VectorXd u = b.u_up_tilde.col(k);
      const double l = b.lambda_up(k);
      EXPECT_LE((laps.l_up * u - l * u).norm(), 1e-8 * l * u.norm());
    }
    // Three mutually orthogonal subspaces filling the edge space.
    EXPECT_EQ(b.w0() + b.w2() + b.harmonic_dim(), c.num_edges()) << "seed " << seed;
    if (b.w0() && b.w2()) EXPECT_LE((b.u_low_tilde.transpose() * b.u_up_tilde).cwiseAbs().maxCoeff(), 1e-8);
    if (b.w0() && b.harmonic_dim())
      EXPECT_LE((b.u_low_tilde.transpose() * b.q1_perp).cwiseAbs().maxCoeff(), 1e-8);
    if (b.w2() && b.harmonic_dim())
      EXPECT_LE((b.u_up_tilde.transpose() * b.q1_perp).cwiseAbs().maxCoeff(), 1e-8);
    if (b.harmonic_dim() && c.num_edges())
      EXPECT_LE((laps.l1 * b.q1_perp).cwiseAbs().maxCoeff(), 1e-8 * std::max(1.0, spectra.l1.eigenvalues.maxCoeff()));
  }
}

TEST(SpectralBases, SmallestNonzeroFirst) {
  const auto c = small_complex();
  const auto spectra = decompose_laplacians(hodge_laplacians(c));
  const auto b = make_spectral_bases(c, spectra, 4, 1);
  EXPECT_NEAR(b.lambda_low(0), 2.0 - std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(b.lambda_low(3), 4.0, 1e-12);
  EXPECT_NEAR(b.lambda_up(0), 3.0, 1e-12);
  EXPECT_EQ(b.harmonic_dim(), 2);
  EXPECT_EQ(recovery_dictionary(b, 2).cols(), 7);
}

TEST(SpectralBases, BandwidthExceeded) {
  const auto c = small_complex();
  const auto spectra = decompose_laplacians(hodge_laplacians(c));
  try {
    make_spectral_bases(c, spectra, 7, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::bandwidth_exceeded);
  }
  EXPECT_THROW(make_spectral_bases(c, spectra, 1, 3), Error);
}

TEST(DistinctPrefix, StopsAtFirstRepeat) {
  EXPECT_EQ(distinct_prefix_length(Eigen::Vector4d(1.0, 2.0, 2.0, 3.0)), 2);
  EXPECT_EQ(distinct_prefix_length(Eigen::Vector3d(1.0, 2.0, 3.0)), 3);
  EXPECT_EQ(distinct_prefix_length(Eigen::VectorXd(0)), 0);
  const double r2 = std::sqrt(2.0);
  EXPECT_EQ(distinct_prefix_length((Eigen::VectorXd(6) << 2 - r2, 4 - r2, 2 + r2, 4, 4, 4 + r2).finished()), 4);
}
