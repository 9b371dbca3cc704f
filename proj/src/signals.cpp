#include "hodgesamp/signals.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "hodgesamp/error.hpp"
#include "hodgesamp/rng.hpp"

namespace hodgesamp {

namespace {

void check_bandwidth(Index requested, Index available, const char* what) {
  if (requested < 0 || requested > available) {
    throw Error(Errc::bandwidth_exceeded, std::string(what) + "=" + std::to_string(requested) +
                                              " exceeds available " + std::to_string(available));
  }
}

Eigen::VectorXd standard_normal(Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

/// Pseudoinverse of a symmetric PSD matrix through its eigendecomposition.
Eigen::MatrixXd psd_pinv(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return m;
  const EigenSystem es = eigendecompose_symmetric(m);
  const double cutoff = 1e-10 * std::max(es.eigenvalues.maxCoeff(), 1.0);
  Eigen::VectorXd inv = es.eigenvalues.unaryExpr([cutoff](double l) { return l > cutoff ? 1.0 / l : 0.0; });
  return es.eigenvectors * inv.asDiagonal() * es.eigenvectors.transpose();
}

}  // namespace

Eigen::VectorXd MultiOrderSignal::coefficients() const {
  Eigen::VectorXd c(x_hat0.size() + x_hat2.size() + r_hat1.size());
  c << x_hat0, x_hat2, r_hat1;
  return c;
}

MultiOrderSignal synthesize_bandlimited(const SpectralBases& bases, Index w0, Index w2,
                                        Index r1_dim, std::uint64_t seed) {
  check_bandwidth(w0, bases.w0(), "w0");
  check_bandwidth(w2, bases.w2(), "w2");
  check_bandwidth(r1_dim, bases.harmonic_dim(), "r1");

  Rng rng(seed);
  MultiOrderSignal s;
  s.x_hat0 = standard_normal(w0, rng);
  s.x_hat2 = standard_normal(w2, rng);
  s.r_hat1 = standard_normal(r1_dim, rng);

  s.x0 = bases.q0_tilde.leftCols(w0) * s.x_hat0;
  s.x2 = bases.q2_tilde.leftCols(w2) * s.x_hat2;
  s.r1 = bases.q1_perp.leftCols(r1_dim) * s.r_hat1;
  s.x1 = bases.u_low_tilde.leftCols(w0) * s.x_hat0 + bases.u_up_tilde.leftCols(w2) * s.x_hat2 + s.r1;
  return s;
}

bool is_harmonic(const Eigen::MatrixXd& l1, const Eigen::VectorXd& r1, double tol) {
  if (l1.rows() == 0) return true;
  const double lambda_bound = l1.cwiseAbs().rowwise().sum().maxCoeff();
  return (l1 * r1).norm() <= tol * lambda_bound * r1.norm();
}

Eigen::VectorXd helmholtz_compose(const SimplicialComplex& c, const Eigen::VectorXd& x0,
                                  const Eigen::VectorXd& x2, const Eigen::VectorXd& r1,
                                  const Eigen::MatrixXd* l1) {
  if (x0.size() != c.num_nodes() || x2.size() != c.num_triangles() || r1.size() != c.num_edges()) {
    throw Error(Errc::dimension_mismatch, "signal lengths do not match (N0, N2, N1)");
  }
  if (l1 != nullptr && !is_harmonic(*l1, r1)) {
    std::clog << "warning: residual flow is not harmonic (||L1 r1|| = " << (*l1 * r1).norm() << ")\n";
  }
  return c.b1().transpose() * x0 + c.b2() * x2 + r1;
}

HelmholtzParts helmholtz_project(const SimplicialComplex& c, const HodgeLaplacians& laps,
                                 const Eigen::VectorXd& x1) {
  if (x1.size() != c.num_edges()) {
    throw Error(Errc::dimension_mismatch, "x1 has length " + std::to_string(x1.size()) +
                                              ", expected " + std::to_string(c.num_edges()));
  }
  HelmholtzParts parts;
  parts.gradient = c.b1().transpose() * (psd_pinv(laps.l0) * (c.b1() * x1));
  parts.curl = c.b2() * (psd_pinv(laps.l2) * (c.b2().transpose() * x1));
  parts.harmonic = x1 - parts.gradient - parts.curl;
  return parts;
}

Eigen::VectorXd gaussian_noise(Index n, double variance, std::uint64_t seed) {
  if (variance < 0.0) throw Error(Errc::negative_variance, std::to_string(variance));
  Rng rng(seed);
  return std::sqrt(variance) * standard_normal(n, rng);
}

Eigen::VectorXd add_noise(const Eigen::VectorXd& x, double variance, std::uint64_t seed) {
  if (variance < 0.0) throw Error(Errc::negative_variance, std::to_string(variance));
  if (variance == 0.0) return x;
  return x + gaussian_noise(x.size(), variance, seed);
}

}  // namespace hodgesamp
