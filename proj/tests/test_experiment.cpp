#include <cmath>

#include <gtest/gtest.h>

#include "hodgesamp/error.hpp"
#include "hodgesamp/experiment.hpp"

using namespace hodgesamp;

namespace {

ExperimentConfig two_hole_config() {
  ExperimentConfig cfg;
  cfg.source = ComplexSource::two_hole;
  cfg.two_hole.num_points = 150;
  cfg.w0 = 20;
  cfg.w2 = 20;
  cfg.r1 = 2;
  cfg.num_shifts = 10;
  cfg.spectral_scaling = true;
  cfg.sample_sizes = {30, 60};
  cfg.variances = {0.0, 1e-6, 1e-5};
  cfg.trials = 10;
  return cfg;
}

}  // namespace

TEST(Config, Validation) {
  ExperimentConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.variances = {1e-3, -1e-5};
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.num_shifts = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.sample_sizes = {};
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.source = ComplexSource::file;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Config, JsonRoundTrip) {
  const auto cfg = two_hole_config();
  const auto back = config_from_json(nlohmann::json::parse(config_to_json(cfg).dump()));
  EXPECT_EQ(config_to_json(back).dump(), config_to_json(cfg).dump());
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"w0":"four"})")), Error);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"guard":"sometimes"})")), Error);
}

TEST(Problem, CapsRepeatedEigenvalues) {
  ExperimentConfig cfg;
  cfg.w0 = 6;
  const auto pr = prepare_problem(cfg);
  EXPECT_EQ(pr.w0_requested, 6);
  EXPECT_EQ(pr.blocks.w0, 4);
  EXPECT_EQ(pr.blocks.w2, 1);
  cfg.w0 = 7;
  EXPECT_THROW(prepare_problem(cfg), Error);
  cfg.w0 = 4;
  cfg.r1 = 3;
  EXPECT_THROW(prepare_problem(cfg), Error);
}

TEST(Problem, SpectralScaling) {
  auto cfg = two_hole_config();
  const auto pr = prepare_problem(cfg);
  const double lmax = pr.spectra.l1.eigenvalues.maxCoeff();
  EXPECT_NEAR(pr.scale * lmax, 1.0, 1e-14);
  EXPECT_LE(pr.lambda_up.maxCoeff(), 1.0 + 1e-12);
  EXPECT_LE((pr.shift_operator - pr.laplacians.l1 / lmax).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Noiseless, ReferenceParametersRecoverPerfectly) {
  ExperimentConfig cfg;
  const auto rep = run_noiseless(cfg);
  ASSERT_TRUE(rep.result.has_value());
  EXPECT_TRUE(rep.feasibility.overall);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.rel_error_x0, 1e-6);
  EXPECT_LE(rep.rel_error_x2, 1e-6);
  EXPECT_LE(rep.rel_error_r1, 1e-6);
}

TEST(Noiseless, OneShiftShortIsReportedInfeasible) {
  ExperimentConfig cfg;
  cfg.num_shifts = 5;
  const auto rep = run_noiseless(cfg);
  EXPECT_FALSE(rep.feasibility.p_ok);
  EXPECT_FALSE(rep.feasibility.overall);
}

TEST(Noiseless, FullSampling) {
  ExperimentConfig cfg;
  cfg.sample_sizes = {10};
  const auto rep = run_noiseless(cfg);
  EXPECT_TRUE(rep.passed);
}

TEST(Noiseless, RankDeficientSkipsRecovery) {
  ExperimentConfig cfg;
  cfg.num_shifts = 1;
  cfg.guard = GuardPolicy::none;
  const auto rep = run_noiseless(cfg);
  EXPECT_FALSE(rep.rank.full_column_rank());
  EXPECT_FALSE(rep.result.has_value());
  EXPECT_FALSE(rep.passed);
  const auto pr = prepare_problem(cfg);
  EXPECT_EQ(noiseless_report_to_json(cfg, pr, rep)["status"], "rank_deficient");
}

TEST(Sweep, RowsAndDecomposition) {
  const auto cfg = two_hole_config();
  const auto res = run_mse_sweep(cfg);
  ASSERT_EQ(res.rows.size(), 6u);
  for (const auto& r : res.rows) {
    EXPECT_EQ(r.mse, (r.mse_x0 + r.mse_x2 + r.mse_r1) / 3.0);
    EXPECT_TRUE(std::isfinite(r.mse));
    if (r.variance == 0.0) {
      EXPECT_LE(r.mse, 1e-12);
    }
  }
  // Larger sampling sets at fixed variance do not do worse.
  EXPECT_LE(res.rows[3].mse, res.rows[2].mse);
  EXPECT_LE(res.rows[5].mse, res.rows[4].mse);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  auto cfg = two_hole_config();
  const auto pr = prepare_problem(cfg);
  const std::string one = sweep_to_csv(run_mse_sweep(cfg, pr));
  cfg.threads = 4;
  EXPECT_EQ(sweep_to_csv(run_mse_sweep(cfg, pr)), one);
}

TEST(Sweep, PerTrialResampling) {
  auto cfg = two_hole_config();
  cfg.per_trial_resampling = true;
  cfg.variances = {0.0};
  const auto res = run_mse_sweep(cfg);
  ASSERT_EQ(res.rows.size(), 2u);
  EXPECT_LE(res.rows[0].mse, 1e-12);
}

TEST(Sweep, OversizedSetIsSkipped) {
  ExperimentConfig cfg;
  cfg.sample_sizes = {2, 11};
  cfg.trials = 3;
  const auto res = run_mse_sweep(cfg);
  ASSERT_EQ(res.skipped.size(), 1u);
  EXPECT_EQ(res.skipped[0].sample_size, 11);
  EXPECT_EQ(res.rows.size(), 1u);
}

TEST(Sweep, CsvHeader) {
  ExperimentConfig cfg;
  cfg.trials = 2;
  const std::string csv = sweep_to_csv(run_mse_sweep(cfg));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "variance,sample_size,mse,mse_x0,mse_x2,mse_r1,trials,P");
}

TEST(Seeds, SamplingSeedsDiffer) {
  EXPECT_NE(sampling_seed(1, 30), sampling_seed(1, 50));
  EXPECT_NE(sampling_seed(1, 30), sampling_seed(1, 30, 0));
  EXPECT_NE(sampling_seed(1, 30, 0), sampling_seed(1, 30, 1));
  EXPECT_EQ(sampling_seed(5, 30, 2), sampling_seed(5, 30, 2));
}

TEST(RelativeError, ZeroTruthFallsBackToAbsolute) {
  EXPECT_DOUBLE_EQ(relative_error(Eigen::VectorXd::Zero(2), Eigen::Vector2d(3, 4)), 5.0);
  EXPECT_DOUBLE_EQ(relative_error(Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1)), 1.0);
}
