#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hodgesamp/complex.hpp"
#include "hodgesamp/sampling.hpp"
#include "hodgesamp/spectral.hpp"

namespace hodgesamp {

inline constexpr double kSingularCutoff = 1e-10;

/// Coefficient block sizes, stacked in the order (x_hat0 | x_hat2 | r_hat1).
struct Blocks {
  Index w0 = 0;
  Index w2 = 0;
  Index r1 = 0;

  Index total() const { return w0 + w2 + r1; }
};

struct RankReport {
  Index rows = 0;
  Index cols = 0;
  Index rank = 0;
  double sigma_max = 0.0;
  double sigma_min = 0.0;  ///< smallest of the min(rows, cols) singular values
  double condition = 0.0;  ///< sigma_max / sigma_min, +inf when sigma_min == 0

  bool full_column_rank() const { return rank == cols; }
};

RankReport rank_report(const Eigen::VectorXd& singular_values, Index rows, Index cols,
                       double rel_cutoff = kSingularCutoff);

/**
 * W1 x P Vandermonde matrix: a row (1, l, l^2, ..., l^{P-1}) for every
 * eigenvalue in lambda_low then lambda_up, followed by r1_dim indicator
 * rows (1, 0, ..., 0) for the harmonic coefficients.
 */
Eigen::MatrixXd build_vandermonde(const Eigen::VectorXd& lambda_low, const Eigen::VectorXd& lambda_up,
                                  Index r1_dim, Index p_shifts);

/// (P |S|) x W1 matrix V^T kr (Phi D): row p*|S| + i, column j holds
/// V(j, p) * phi_d(i, j).
Eigen::MatrixXd khatri_rao_system(const Eigen::MatrixXd& vandermonde, const Eigen::MatrixXd& phi_d);

/// Assembled spectral system z1 = (V^T kr Phi D) x_hat and its pseudoinverse.
struct RecoverySystem {
  Blocks blocks;
  Index num_shifts = 0;
  std::vector<Index> sample_set;
  Eigen::MatrixXd vandermonde;  ///< W1 x P
  Eigen::MatrixXd dictionary;   ///< N1 x W1, [U_low | U_up | Q1_perp]
  Eigen::MatrixXd system;       ///< (P |S|) x W1
  Eigen::MatrixXd pseudoinverse;  ///< W1 x (P |S|), singular values below the cutoff dropped
  RankReport rank;
};

/// Entry (p*|S| + i, j) of the system is V(j, p) * D(S_i, j).
RecoverySystem assemble_system(const Eigen::MatrixXd& vandermonde, const Eigen::MatrixXd& dictionary,
                               std::span<const Index> sample_set, Blocks blocks);

struct RecoveryResult {
  Eigen::VectorXd x_hat0;
  Eigen::VectorXd x_hat2;
  Eigen::VectorXd r_hat1;
  Eigen::VectorXd x0_ls;
  Eigen::VectorXd x2_ls;
  Eigen::VectorXd r1_ls;
  double residual_norm = 0.0;  ///< ||A x_hat - z1||
  RankReport rank;
};

/// Minimum-norm least-squares solution of the system. Rank deficiency is
/// reported in `rank`, never thrown.
RecoveryResult recover(const RecoverySystem& sys, const Observations& obs, const SpectralBases& bases);

/// Same as above for a raw vectorized observation.
RecoveryResult recover(const RecoverySystem& sys, const Eigen::VectorXd& z1_vec,
                       const SpectralBases& bases);

/**
 * Checkable sufficient conditions for exact recovery.
 *
 * overall = p_ok && s_ok && eigenvalues_distinct && phi_rows_full_rank.
 * The remaining fields are diagnostics that do not enter `overall`.
 */
struct FeasibilityReport {
  Index p_required = 0;  ///< W0 + W2 + 1
  Index s_required = 0;  ///< R1
  Index p_supplied = 0;
  Index s_supplied = 0;
  bool p_ok = false;
  bool s_ok = false;
  bool eigenvalues_distinct = false;
  double min_eigenvalue_gap = 0.0;  ///< +inf with fewer than two eigenvalues
  bool phi_rows_full_rank = false;  ///< rank(Phi D) >= R1
  Index phi_rank = 0;
  Index harmonic_rows_rank = 0;     ///< rank of the sampled Q1_perp rows
  Index unobserved_columns = 0;     ///< columns of Phi D that are identically zero
  bool overall = false;
};

FeasibilityReport check_feasibility(Index w0, Index w2, Index r1_dim, const Eigen::VectorXd& lambda_low,
                                    const Eigen::VectorXd& lambda_up, Index p_shifts,
                                    std::span<const Index> sample_set, const Eigen::MatrixXd& dictionary);

}  // namespace hodgesamp
