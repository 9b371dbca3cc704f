#pragma once

#include <Eigen/Dense>

#include "hodgesamp/complex.hpp"

namespace hodgesamp {

inline constexpr double kDefaultZeroTol = 1e-8;

/// Eigenpairs of a symmetric matrix. Eigenvalues ascend; column k of
/// `eigenvectors` pairs with eigenvalue k. Each eigenvector is signed so
/// that its largest-magnitude entry (first one on ties) is positive.
struct EigenSystem {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  Index size() const { return eigenvalues.size(); }
};

/// Symmetrizes `m` as (M + M^T)/2 before decomposing. Throws on non-square
/// input or if the solver does not converge.
EigenSystem eigendecompose_symmetric(const Eigen::MatrixXd& m);

struct SpectrumSplit {
  EigenSystem null_part;
  EigenSystem range_part;
};

/// An eigenvalue is null iff lambda <= zero_tol * max(lambda_max, 1).
SpectrumSplit split_spectrum(const EigenSystem& es, double zero_tol = kDefaultZeroTol);

struct LiftedBases {
  Eigen::MatrixXd u_low;  ///< B1^T q0, unnormalized (column norm sqrt(lambda))
  Eigen::MatrixXd u_up;   ///< B2 q2, unnormalized
  Eigen::VectorXd lambda_low;
  Eigen::VectorXd lambda_up;
};

/// Lifts range eigenvectors of L0 and L2 to eigenvectors of L_low and L_up
/// with the same eigenvalues. Throws Errc::zero_eigenvalue if a supplied
/// column pairs with a numerically zero eigenvalue.
LiftedBases lift_bases(const SimplicialComplex& c, const Eigen::MatrixXd& q0_tilde,
                       const Eigen::MatrixXd& q2_tilde, const Eigen::VectorXd& lambda0,
                       const Eigen::VectorXd& lambda2, double zero_tol = kDefaultZeroTol);

/// Full eigendecompositions of L0, L1, L2.
struct HodgeSpectra {
  EigenSystem l0;
  EigenSystem l1;
  EigenSystem l2;
};

HodgeSpectra decompose_laplacians(const HodgeLaplacians& laps);

/**
 * Truncated and lifted bases used for synthesis and recovery.
 *
 * q0_tilde / q2_tilde hold the w0 / w2 range eigenvectors with the smallest
 * nonzero eigenvalues. q1_perp spans all of N(L1); callers take its first
 * R1 columns.
 */
struct SpectralBases {
  Eigen::MatrixXd q0_tilde;
  Eigen::MatrixXd q2_tilde;
  Eigen::MatrixXd q1_perp;
  Eigen::MatrixXd u_low_tilde;
  Eigen::MatrixXd u_up_tilde;
  Eigen::VectorXd lambda_low;
  Eigen::VectorXd lambda_up;

  Index w0() const { return q0_tilde.cols(); }
  Index w2() const { return q2_tilde.cols(); }
  Index harmonic_dim() const { return q1_perp.cols(); }
};

/// Throws Errc::bandwidth_exceeded when w0 or w2 exceed the range dimension.
SpectralBases make_spectral_bases(const SimplicialComplex& c, const HodgeSpectra& spectra, Index w0,
                                  Index w2, double zero_tol = kDefaultZeroTol);

/// Dimension of the range of L_k in `es` (number of non-null eigenvalues).
Index range_dimension(const EigenSystem& es, double zero_tol = kDefaultZeroTol);

/// Length of the longest prefix of ascending `values` whose entries are
/// pairwise separated by more than rel_gap * max(|values|).
Index distinct_prefix_length(const Eigen::VectorXd& values, double rel_gap = 1e-8);

/// [u_low_tilde | u_up_tilde | first r1_dim columns of q1_perp].
Eigen::MatrixXd recovery_dictionary(const SpectralBases& bases, Index r1_dim);

}  // namespace hodgesamp
