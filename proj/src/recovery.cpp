#include "hodgesamp/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hodgesamp/error.hpp"

namespace hodgesamp {

RankReport rank_report(const Eigen::VectorXd& singular_values, Index rows, Index cols,
                       double rel_cutoff) {
  RankReport r;
  r.rows = rows;
  r.cols = cols;
  if (singular_values.size() == 0) {
    r.condition = std::numeric_limits<double>::infinity();
    return r;
  }
  r.sigma_max = singular_values(0);
  r.sigma_min = singular_values(singular_values.size() - 1);
  r.rank = r.sigma_max > 0.0
               ? static_cast<Index>((singular_values.array() >= rel_cutoff * r.sigma_max).count())
               : 0;
  r.condition = r.sigma_min > 0.0 ? r.sigma_max / r.sigma_min : std::numeric_limits<double>::infinity();
  return r;
}

Eigen::MatrixXd build_vandermonde(const Eigen::VectorXd& lambda_low, const Eigen::VectorXd& lambda_up,
                                  Index r1_dim, Index p_shifts) {
  if (p_shifts < 1) throw Error(Errc::invalid_argument, "P must be >= 1");
  if (r1_dim < 0) throw Error(Errc::invalid_argument, "negative r1_dim");
  const Index w0 = lambda_low.size();
  const Index w2 = lambda_up.size();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(w0 + w2 + r1_dim, p_shifts);
  auto power_row = [&](Index row, double lambda) {
    double power = 1.0;
    for (Index p = 0; p < p_shifts; ++p) {
      v(row, p) = power;
      power *= lambda;
    }
  };
  for (Index j = 0; j < w0; ++j) power_row(j, lambda_low(j));
  for (Index j = 0; j < w2; ++j) power_row(w0 + j, lambda_up(j));
  for (Index j = 0; j < r1_dim; ++j) v(w0 + w2 + j, 0) = 1.0;
  return v;
}

Eigen::MatrixXd khatri_rao_system(const Eigen::MatrixXd& vandermonde, const Eigen::MatrixXd& phi_d) {
  if (vandermonde.rows() != phi_d.cols()) {
    throw Error(Errc::dimension_mismatch, "V rows must match dictionary columns");
  }
  const Index s = phi_d.rows();
  Eigen::MatrixXd a(vandermonde.cols() * s, phi_d.cols());
  for (Index p = 0; p < vandermonde.cols(); ++p) {
    a.middleRows(p * s, s) = phi_d * vandermonde.col(p).asDiagonal();
  }
  return a;
}

RecoverySystem assemble_system(const Eigen::MatrixXd& vandermonde, const Eigen::MatrixXd& dictionary,
                               std::span<const Index> sample_set, Blocks blocks) {
  const Index w1 = vandermonde.rows();
  const Index p_shifts = vandermonde.cols();
  const Index s = static_cast<Index>(sample_set.size());
  if (dictionary.cols() != w1 || blocks.total() != w1) {
    throw Error(Errc::dimension_mismatch,
                "V has " + std::to_string(w1) + " rows, dictionary has " +
                    std::to_string(dictionary.cols()) + " columns, blocks total " +
                    std::to_string(blocks.total()));
  }
  if (p_shifts < 1 || s < 1 || w1 < 1) {
    throw Error(Errc::invalid_argument, "need P >= 1, |S| >= 1 and W1 >= 1");
  }

  RecoverySystem sys;
  sys.blocks = blocks;
  sys.num_shifts = p_shifts;
  sys.sample_set.assign(sample_set.begin(), sample_set.end());
  sys.vandermonde = vandermonde;
  sys.dictionary = dictionary;

  sys.system = khatri_rao_system(vandermonde, select_rows(dictionary, sample_set));

  Eigen::BDCSVD<Eigen::MatrixXd> svd(sys.system, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  sys.rank = rank_report(sigma, sys.system.rows(), w1);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sigma.size());
  for (Index k = 0; k < sys.rank.rank; ++k) inv(k) = 1.0 / sigma(k);
  sys.pseudoinverse = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  return sys;
}

RecoveryResult recover(const RecoverySystem& sys, const Eigen::VectorXd& z1_vec,
                       const SpectralBases& bases) {
  if (z1_vec.size() != sys.system.rows()) {
    throw Error(Errc::dimension_mismatch, "z1 has length " + std::to_string(z1_vec.size()) +
                                              ", system has " + std::to_string(sys.system.rows()) +
                                              " rows");
  }
  const Blocks& b = sys.blocks;
  if (b.w0 > bases.w0() || b.w2 > bases.w2() || b.r1 > bases.harmonic_dim()) {
    throw Error(Errc::dimension_mismatch, "system blocks exceed the supplied bases");
  }
  const Eigen::VectorXd x_hat = sys.pseudoinverse * z1_vec;

  RecoveryResult r;
  r.x_hat0 = x_hat.segment(0, b.w0);
  r.x_hat2 = x_hat.segment(b.w0, b.w2);
  r.r_hat1 = x_hat.segment(b.w0 + b.w2, b.r1);
  r.x0_ls = bases.q0_tilde.leftCols(b.w0) * r.x_hat0;
  r.x2_ls = bases.q2_tilde.leftCols(b.w2) * r.x_hat2;
  r.r1_ls = bases.q1_perp.leftCols(b.r1) * r.r_hat1;
  r.residual_norm = (sys.system * x_hat - z1_vec).norm();
  r.rank = sys.rank;
  return r;
}

RecoveryResult recover(const RecoverySystem& sys, const Observations& obs, const SpectralBases& bases) {
  return recover(sys, obs.z1_vec, bases);
}

FeasibilityReport check_feasibility(Index w0, Index w2, Index r1_dim, const Eigen::VectorXd& lambda_low,
                                    const Eigen::VectorXd& lambda_up, Index p_shifts,
                                    std::span<const Index> sample_set, const Eigen::MatrixXd& dictionary) {
  if (lambda_low.size() != w0 || lambda_up.size() != w2 || dictionary.cols() != w0 + w2 + r1_dim) {
    throw Error(Errc::dimension_mismatch, "eigenvalue lists or dictionary disagree with bandwidths");
  }
  FeasibilityReport f;
  f.p_required = w0 + w2 + 1;
  f.s_required = r1_dim;
  f.p_supplied = p_shifts;
  f.s_supplied = static_cast<Index>(sample_set.size());
  f.p_ok = p_shifts >= f.p_required;
  f.s_ok = f.s_supplied >= f.s_required;

  Eigen::VectorXd all(w0 + w2);
  all << lambda_low, lambda_up;
  f.min_eigenvalue_gap = std::numeric_limits<double>::infinity();
  if (all.size() >= 2) {
    std::vector<double> sorted(all.data(), all.data() + all.size());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      f.min_eigenvalue_gap = std::min(f.min_eigenvalue_gap, sorted[k] - sorted[k - 1]);
    }
  }
  const double lambda_max = all.size() > 0 ? all.cwiseAbs().maxCoeff() : 0.0;
  f.eigenvalues_distinct = f.min_eigenvalue_gap > 1e-8 * lambda_max;

  const Eigen::MatrixXd phi_d = select_rows(dictionary, sample_set);
  f.phi_rank = numerical_rank(phi_d);
  f.phi_rows_full_rank = f.phi_rank >= r1_dim;
  f.harmonic_rows_rank = numerical_rank(phi_d.rightCols(r1_dim));
  const double scale = phi_d.size() > 0 ? phi_d.cwiseAbs().maxCoeff() : 0.0;
  for (Index j = 0; j < phi_d.cols(); ++j) {
    if (phi_d.rows() == 0 || phi_d.col(j).cwiseAbs().maxCoeff() <= 1e-12 * scale) ++f.unobserved_columns;
  }

  f.overall = f.p_ok && f.s_ok && f.eigenvalues_distinct && f.phi_rows_full_rank;
  return f;
}

}  // namespace hodgesamp
