#include "hodgesamp/spectral.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "hodgesamp/error.hpp"

namespace hodgesamp {

namespace {

double null_threshold(const Eigen::VectorXd& eigenvalues, double zero_tol) {
  const double top = eigenvalues.size() > 0 ? eigenvalues.maxCoeff() : 0.0;
  return zero_tol * std::max(top, 1.0);
}

EigenSystem select_columns(const EigenSystem& es, const std::vector<Index>& cols) {
  EigenSystem out;
  out.eigenvalues.resize(static_cast<Index>(cols.size()));
  out.eigenvectors.resize(es.eigenvectors.rows(), static_cast<Index>(cols.size()));
  for (Index k = 0; k < static_cast<Index>(cols.size()); ++k) {
    out.eigenvalues(k) = es.eigenvalues(cols[k]);
    out.eigenvectors.col(k) = es.eigenvectors.col(cols[k]);
  }
  return out;
}

}  // namespace

EigenSystem eigendecompose_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw Error(Errc::not_square, std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  EigenSystem es;
  if (m.rows() == 0) {
    es.eigenvalues.resize(0);
    es.eigenvectors.resize(0, 0);
    return es;
  }
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::decomposition_failed, "symmetric eigensolver did not converge");
  }
  es.eigenvalues = solver.eigenvalues();
  es.eigenvectors = solver.eigenvectors();

  for (Index k = 0; k < es.eigenvectors.cols(); ++k) {
    Index arg = 0;
    es.eigenvectors.col(k).cwiseAbs().maxCoeff(&arg);
    if (es.eigenvectors(arg, k) < 0.0) es.eigenvectors.col(k) *= -1.0;
  }
  return es;
}

SpectrumSplit split_spectrum(const EigenSystem& es, double zero_tol) {
  const double threshold = null_threshold(es.eigenvalues, zero_tol);
  std::vector<Index> null_cols;
  std::vector<Index> range_cols;
  for (Index k = 0; k < es.size(); ++k) {
    (es.eigenvalues(k) <= threshold ? null_cols : range_cols).push_back(k);
  }
  return {select_columns(es, null_cols), select_columns(es, range_cols)};
}

Index range_dimension(const EigenSystem& es, double zero_tol) {
  const double threshold = null_threshold(es.eigenvalues, zero_tol);
  return static_cast<Index>((es.eigenvalues.array() > threshold).count());
}

LiftedBases lift_bases(const SimplicialComplex& c, const Eigen::MatrixXd& q0_tilde,
                       const Eigen::MatrixXd& q2_tilde, const Eigen::VectorXd& lambda0,
                       const Eigen::VectorXd& lambda2, double zero_tol) {
  if (q0_tilde.rows() != c.num_nodes() || q0_tilde.cols() != lambda0.size()) {
    throw Error(Errc::dimension_mismatch, "q0_tilde does not match L0 or its eigenvalues");
  }
  if (q2_tilde.rows() != c.num_triangles() || q2_tilde.cols() != lambda2.size()) {
    throw Error(Errc::dimension_mismatch, "q2_tilde does not match L2 or its eigenvalues");
  }
  auto check_positive = [zero_tol](const Eigen::VectorXd& lambda, const char* which) {
    if (lambda.size() == 0) return;
    const double threshold = zero_tol * std::max(lambda.cwiseAbs().maxCoeff(), 1.0);
    for (Index k = 0; k < lambda.size(); ++k) {
      if (lambda(k) <= threshold) {
        throw Error(Errc::zero_eigenvalue,
                    std::string(which) + " column " + std::to_string(k) + " has eigenvalue " +
                        std::to_string(lambda(k)));
      }
    }
  };
  check_positive(lambda0, "q0_tilde");
  check_positive(lambda2, "q2_tilde");

  LiftedBases lifted;
  lifted.u_low = c.b1().transpose() * q0_tilde;
  lifted.u_up = c.b2() * q2_tilde;
  lifted.lambda_low = lambda0;
  lifted.lambda_up = lambda2;
  return lifted;
}

HodgeSpectra decompose_laplacians(const HodgeLaplacians& laps) {
  return {eigendecompose_symmetric(laps.l0), eigendecompose_symmetric(laps.l1),
          eigendecompose_symmetric(laps.l2)};
}

SpectralBases make_spectral_bases(const SimplicialComplex& c, const HodgeSpectra& spectra, Index w0,
                                  Index w2, double zero_tol) {
  const SpectrumSplit s0 = split_spectrum(spectra.l0, zero_tol);
  const SpectrumSplit s1 = split_spectrum(spectra.l1, zero_tol);
  const SpectrumSplit s2 = split_spectrum(spectra.l2, zero_tol);

  if (w0 < 0 || w0 > s0.range_part.size()) {
    throw Error(Errc::bandwidth_exceeded, "w0=" + std::to_string(w0) + " but range(L0) has dim " +
                                              std::to_string(s0.range_part.size()));
  }
  if (w2 < 0 || w2 > s2.range_part.size()) {
    throw Error(Errc::bandwidth_exceeded, "w2=" + std::to_string(w2) + " but range(L2) has dim " +
                                              std::to_string(s2.range_part.size()));
  }

  SpectralBases b;
  b.q0_tilde = s0.range_part.eigenvectors.leftCols(w0);
  b.q2_tilde = s2.range_part.eigenvectors.leftCols(w2);
  b.q1_perp = s1.null_part.eigenvectors;
  LiftedBases lifted = lift_bases(c, b.q0_tilde, b.q2_tilde, s0.range_part.eigenvalues.head(w0),
                                  s2.range_part.eigenvalues.head(w2), zero_tol);
  b.u_low_tilde = std::move(lifted.u_low);
  b.u_up_tilde = std::move(lifted.u_up);
  b.lambda_low = std::move(lifted.lambda_low);
  b.lambda_up = std::move(lifted.lambda_up);
  return b;
}

Index distinct_prefix_length(const Eigen::VectorXd& values, double rel_gap) {
  if (values.size() == 0) return 0;
  const double gap = rel_gap * values.cwiseAbs().maxCoeff();
  for (Index k = 1; k < values.size(); ++k) {
    for (Index j = 0; j < k; ++j) {
      if (std::abs(values(k) - values(j)) <= gap) return k;
    }
  }
  return values.size();
}

Eigen::MatrixXd recovery_dictionary(const SpectralBases& bases, Index r1_dim) {
  if (r1_dim < 0 || r1_dim > bases.harmonic_dim()) {
    throw Error(Errc::bandwidth_exceeded, "r1=" + std::to_string(r1_dim) + " but N(L1) has dim " +
                                              std::to_string(bases.harmonic_dim()));
  }
  const Index n1 = bases.q1_perp.rows();
  Eigen::MatrixXd d(n1, bases.w0() + bases.w2() + r1_dim);
  d << bases.u_low_tilde, bases.u_up_tilde, bases.q1_perp.leftCols(r1_dim);
  return d;
}

}  // namespace hodgesamp
