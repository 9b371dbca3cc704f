#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hodgesamp/complex.hpp"

namespace hodgesamp {

struct SamplingPlan {
  Index num_shifts = 1;            ///< P
  std::vector<Index> sample_set;   ///< S, strictly increasing edge indices
  std::uint64_t seed = 0;          ///< seed the set was drawn with, if random

  /// Throws unless P >= 1, S is nonempty, strictly increasing and < n_edges.
  void validate(Index n_edges) const;
};

/// Z1 = Phi Y1 and its column-major vectorization.
struct Observations {
  Eigen::MatrixXd z1_matrix;  ///< |S| x P
  Eigen::VectorXd z1_vec;     ///< z1_vec[p*|S| + i] == z1_matrix(i, p)
};

/// Y1 = [x1, L1 x1, ..., L1^{P-1} x1], one matrix-vector product per shift.
Eigen::MatrixXd aggregate(const Eigen::MatrixXd& l1, const Eigen::VectorXd& x1, Index p_shifts);

struct SampleSelection {
  std::vector<Index> indices;  ///< sorted ascending
  Index attempts = 0;          ///< draws made, including the accepted one
};

/// Accepts or rejects a candidate (sorted) sampling set.
using SampleGuard = std::function<bool(std::span<const Index>)>;

/**
 * Uniform random `size`-subset of {0..n_edges-1} without replacement.
 *
 * With a guard, draws repeat from the same stream until the guard accepts,
 * up to max_retries draws in total; exhaustion throws
 * Errc::retries_exhausted.
 */
SampleSelection choose_sampling_set(Index n_edges, Index size, std::uint64_t seed,
                                    const SampleGuard& guard = {}, Index max_retries = 1000);

/// Rank guard: the selected rows of `candidate_rows` must have rank
/// min(size, candidate_rows.cols()).
SampleSelection choose_sampling_set(Index n_edges, Index size, std::uint64_t seed,
                                    const Eigen::MatrixXd& candidate_rows, Index max_retries);

/// Rows of `m` indexed by `rows`.
Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, std::span<const Index> rows);

Observations observe(const Eigen::MatrixXd& y1, const SamplingPlan& plan);

/// Numerical rank from singular values, cutoff rel_tol * sigma_max.
Index numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-10);

}  // namespace hodgesamp
