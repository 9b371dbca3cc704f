#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hodgesamp/complex.hpp"
#include "hodgesamp/datasets.hpp"
#include "hodgesamp/io.hpp"
#include "hodgesamp/recovery.hpp"
#include "hodgesamp/signals.hpp"
#include "hodgesamp/spectral.hpp"

namespace hodgesamp {

enum class ComplexSource { small, two_hole, file };

/// How sampling sets are screened before use.
enum class GuardPolicy {
  system,      ///< redraw until the assembled system has full column rank
  dictionary,  ///< redraw until the sampled dictionary rows have rank min(|S|, W1)
  none,
};

struct ExperimentConfig {
  ComplexSource source = ComplexSource::small;
  TwoHoleConfig two_hole;
  std::string complex_path;

  Index w0 = 4;
  Index w2 = 1;
  Index r1 = 2;
  Index num_shifts = 6;
  std::vector<Index> sample_sizes{2};
  std::vector<double> variances{0.0};
  Index trials = 100;
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  /// Divide L1 (and so every eigenvalue in V) by lambda_max(L1).
  bool spectral_scaling = false;
  bool per_trial_resampling = false;
  GuardPolicy guard = GuardPolicy::system;
  Index max_retries = 1000;
  double zero_tol = kDefaultZeroTol;
  /// Pass threshold on relative errors for noiseless runs.
  double tolerance = 1e-6;
  Index threads = 1;

  void validate() const;
};

Json config_to_json(const ExperimentConfig& cfg);
/// Fields missing from `j` keep their value in `base`.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

/// Complex, spectra and bases for one configuration, with bandwidths capped
/// so the selected eigenvalues of L0 (and of L2) are pairwise distinct.
struct Problem {
  SimplicialComplex complex;
  std::vector<Point2> points;  ///< empty unless the source is two-hole
  HodgeLaplacians laplacians;
  HodgeSpectra spectra;
  SpectralBases bases;
  Blocks blocks;
  Index w0_requested = 0;
  Index w2_requested = 0;
  double scale = 1.0;                ///< 1 or 1 / lambda_max(L1)
  Eigen::MatrixXd shift_operator;    ///< scale * L1
  Eigen::VectorXd lambda_low;        ///< scale * bases.lambda_low
  Eigen::VectorXd lambda_up;         ///< scale * bases.lambda_up
  Eigen::MatrixXd dictionary;
};

SimplicialComplex load_configured_complex(const ExperimentConfig& cfg,
                                          std::vector<Point2>* points = nullptr);

Problem prepare_problem(const ExperimentConfig& cfg);

/// Vandermonde matrix of the (scaled) problem at P shifts.
Eigen::MatrixXd problem_vandermonde(const Problem& problem, Index p_shifts);

struct SampleChoice {
  std::vector<Index> indices;
  Index attempts = 0;
  bool guard_satisfied = true;
};

/// Draws a sampling set of `size` edges under `policy`. If the guard is
/// never satisfied, the first unguarded draw of the same stream is
/// returned with guard_satisfied = false.
SampleChoice choose_guarded_set(const Problem& problem, Index p_shifts, Index size, std::uint64_t seed,
                                GuardPolicy policy, Index max_retries);

/// Sub-seed used for the sampling set of a given size (and trial, when
/// sets are redrawn per trial).
std::uint64_t sampling_seed(std::uint64_t master, Index size, std::optional<Index> trial = std::nullopt);

/// ||x - estimate|| / ||x||, or the absolute error when x == 0.
double relative_error(const Eigen::VectorXd& truth, const Eigen::VectorXd& estimate);

struct NoiselessReport {
  MultiOrderSignal signal;
  SamplingPlan plan;
  SampleChoice choice;
  Observations observations;
  FeasibilityReport feasibility;
  RankReport rank;
  std::optional<RecoveryResult> result;  ///< absent when the system is rank deficient
  double rel_error_x0 = 0.0;
  double rel_error_x2 = 0.0;
  double rel_error_r1 = 0.0;
  bool passed = false;
};

/// Single noiseless synthesize-sample-recover run on cfg.sample_sizes[0].
/// Recovery runs only when the system has full column rank.
NoiselessReport run_noiseless(const ExperimentConfig& cfg);
NoiselessReport run_noiseless(const ExperimentConfig& cfg, const Problem& problem);

Json noiseless_report_to_json(const ExperimentConfig& cfg, const Problem& problem,
                              const NoiselessReport& report);

struct SweepRow {
  double variance = 0.0;
  Index sample_size = 0;
  double mse = 0.0;
  double mse_x0 = 0.0;
  double mse_x2 = 0.0;
  double mse_r1 = 0.0;
  Index trials = 0;
  Index num_shifts = 0;
};

struct SweepSkip {
  Index sample_size = 0;
  std::string reason;
};

struct SweepResult {
  std::vector<SweepRow> rows;  ///< variance-major, then sample size, in config order
  std::vector<SweepSkip> skipped;
  std::vector<std::pair<Index, SampleChoice>> sample_sets;
  Blocks blocks;
};

/**
 * MSE grid over (variance, |S|). One synthesized signal; trial t adds
 * sqrt(variance) * g_t with g_t drawn from the noise stream of index t, so
 * the same g_t is shared by every cell. MSE(x) is the trial mean of
 * ||x - x_ls||^2 and mse = (mse_x0 + mse_x2 + mse_r1) / 3.
 *
 * Sizes whose system is rank deficient are skipped with a reason.
 */
SweepResult run_mse_sweep(const ExperimentConfig& cfg);
SweepResult run_mse_sweep(const ExperimentConfig& cfg, const Problem& problem);

std::string sweep_to_csv(const SweepResult& result);
Json sweep_to_json(const ExperimentConfig& cfg, const Problem& problem, const SweepResult& result);

Json rank_to_json(const RankReport& r);
Json feasibility_to_json(const FeasibilityReport& f);
Json recovery_result_to_json(const RecoveryResult& r, const MultiOrderSignal* truth = nullptr);

}  // namespace hodgesamp
