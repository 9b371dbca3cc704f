#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "hodgesamp/complex.hpp"
#include "hodgesamp/spectral.hpp"

namespace hodgesamp {

/// Node, triangle and harmonic signals with their spectral coefficients,
/// and the edge flow x1 = B1^T x0 + B2 x2 + r1 they compose.
struct MultiOrderSignal {
  Eigen::VectorXd x0;
  Eigen::VectorXd x2;
  Eigen::VectorXd r1;
  Eigen::VectorXd x_hat0;
  Eigen::VectorXd x_hat2;
  Eigen::VectorXd r_hat1;
  Eigen::VectorXd x1;

  /// Stacked coefficients (x_hat0 | x_hat2 | r_hat1).
  Eigen::VectorXd coefficients() const;
};

/**
 * Draws i.i.d. standard normal coefficients over the first w0 columns of
 * q0_tilde, the first w2 of q2_tilde and the first r1_dim of q1_perp, in
 * that order from one stream seeded by `seed`.
 *
 * The edge flow is formed through the lifted bases, which equals
 * B1^T x0 + B2 x2 + r1.
 */
MultiOrderSignal synthesize_bandlimited(const SpectralBases& bases, Index w0, Index w2,
                                        Index r1_dim, std::uint64_t seed);

/// x1 = B1^T x0 + B2 x2 + r1. When `l1` is given, a non-harmonic r1 logs a
/// warning to std::clog.
Eigen::VectorXd helmholtz_compose(const SimplicialComplex& c, const Eigen::VectorXd& x0,
                                  const Eigen::VectorXd& x2, const Eigen::VectorXd& r1,
                                  const Eigen::MatrixXd* l1 = nullptr);

/// ||L1 r1|| <= tol * lambda_max(L1) * ||r1||, with lambda_max bounded
/// above by the max absolute row sum.
bool is_harmonic(const Eigen::MatrixXd& l1, const Eigen::VectorXd& r1, double tol = 1e-8);

struct HelmholtzParts {
  Eigen::VectorXd gradient;  ///< component in R(B1^T)
  Eigen::VectorXd curl;      ///< component in R(B2)
  Eigen::VectorXd harmonic;  ///< remainder, in N(L1)
};

/// Orthogonal projections onto the three Hodge subspaces:
/// gradient = B1^T L0^+ B1 x1, curl = B2 L2^+ B2^T x1.
HelmholtzParts helmholtz_project(const SimplicialComplex& c, const HodgeLaplacians& laps,
                                 const Eigen::VectorXd& x1);

/// x + n with n i.i.d. N(0, variance). Variance 0 returns x unchanged.
Eigen::VectorXd add_noise(const Eigen::VectorXd& x, double variance, std::uint64_t seed);

/// Noise drawn as sqrt(variance) * standard normal from `seed`. Two calls
/// with the same seed and different variances are exact rescalings.
Eigen::VectorXd gaussian_noise(Index n, double variance, std::uint64_t seed);

}  // namespace hodgesamp
