#include "hodgesamp/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hodgesamp/error.hpp"
#include "hodgesamp/rng.hpp"

namespace hodgesamp {

void SamplingPlan::validate(Index n_edges) const {
  if (num_shifts < 1) throw Error(Errc::invalid_argument, "P must be >= 1");
  if (sample_set.empty()) throw Error(Errc::invalid_argument, "empty sampling set");
  for (std::size_t k = 0; k < sample_set.size(); ++k) {
    const Index e = sample_set[k];
    if (e < 0 || e >= n_edges) {
      throw Error(Errc::index_out_of_range, "edge " + std::to_string(e) + " not in [0, " +
                                                std::to_string(n_edges) + ")");
    }
    if (k > 0 && sample_set[k - 1] >= e) {
      throw Error(Errc::invalid_argument, "sampling set must be strictly increasing");
    }
  }
}

Eigen::MatrixXd aggregate(const Eigen::MatrixXd& l1, const Eigen::VectorXd& x1, Index p_shifts) {
  if (p_shifts < 1) throw Error(Errc::invalid_argument, "P must be >= 1");
  if (l1.rows() != l1.cols() || l1.cols() != x1.size()) {
    throw Error(Errc::dimension_mismatch, "L1 is " + std::to_string(l1.rows()) + "x" +
                                              std::to_string(l1.cols()) + ", x1 has length " +
                                              std::to_string(x1.size()));
  }
  Eigen::MatrixXd y(x1.size(), p_shifts);
  y.col(0) = x1;
  for (Index p = 1; p < p_shifts; ++p) y.col(p).noalias() = l1 * y.col(p - 1);
  return y;
}

SampleSelection choose_sampling_set(Index n_edges, Index size, std::uint64_t seed,
                                    const SampleGuard& guard, Index max_retries) {
  if (size < 1 || size > n_edges) {
    throw Error(Errc::invalid_argument, "sample size " + std::to_string(size) + " not in [1, " +
                                            std::to_string(n_edges) + "]");
  }
  if (max_retries < 1) throw Error(Errc::invalid_argument, "max_retries must be >= 1");

  Rng rng(seed);
  std::vector<Index> pool(static_cast<std::size_t>(n_edges));
  SampleSelection sel;
  for (sel.attempts = 1; sel.attempts <= max_retries; ++sel.attempts) {
    std::iota(pool.begin(), pool.end(), Index{0});
    // Partial Fisher-Yates: the first `size` slots become the subset.
    for (Index k = 0; k < size; ++k) {
      std::uniform_int_distribution<Index> pick(k, n_edges - 1);
      std::swap(pool[k], pool[pick(rng)]);
    }
    sel.indices.assign(pool.begin(), pool.begin() + size);
    std::sort(sel.indices.begin(), sel.indices.end());
    if (!guard || guard(sel.indices)) return sel;
  }
  throw Error(Errc::retries_exhausted,
              "no accepted sampling set of size " + std::to_string(size) + " after " +
                  std::to_string(max_retries) + " draws");
}

SampleSelection choose_sampling_set(Index n_edges, Index size, std::uint64_t seed,
                                    const Eigen::MatrixXd& candidate_rows, Index max_retries) {
  if (candidate_rows.rows() != n_edges) {
    throw Error(Errc::dimension_mismatch, "candidate matrix must have one row per edge");
  }
  const Index target = std::min(size, static_cast<Index>(candidate_rows.cols()));
  SampleGuard guard = [&](std::span<const Index> rows) {
    return numerical_rank(select_rows(candidate_rows, rows)) == target;
  };
  return choose_sampling_set(n_edges, size, seed, guard, max_retries);
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, std::span<const Index> rows) {
  Eigen::MatrixXd out(static_cast<Index>(rows.size()), m.cols());
  for (Index i = 0; i < static_cast<Index>(rows.size()); ++i) {
    if (rows[i] < 0 || rows[i] >= m.rows()) {
      throw Error(Errc::index_out_of_range, "row " + std::to_string(rows[i]));
    }
    out.row(i) = m.row(rows[i]);
  }
  return out;
}

Observations observe(const Eigen::MatrixXd& y1, const SamplingPlan& plan) {
  plan.validate(y1.rows());
  if (y1.cols() != plan.num_shifts) {
    throw Error(Errc::dimension_mismatch, "Y1 has " + std::to_string(y1.cols()) +
                                              " columns, plan expects P=" +
                                              std::to_string(plan.num_shifts));
  }
  Observations obs;
  obs.z1_matrix = select_rows(y1, plan.sample_set);
  obs.z1_vec = Eigen::Map<const Eigen::VectorXd>(obs.z1_matrix.data(), obs.z1_matrix.size());
  return obs;
}

Index numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  return static_cast<Index>((s.array() >= rel_tol * s(0)).count());
}

}  // namespace hodgesamp
