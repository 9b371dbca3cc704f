#include "hodgesamp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <thread>

#include "hodgesamp/error.hpp"
#include "hodgesamp/rng.hpp"
#include "hodgesamp/sampling.hpp"

namespace hodgesamp {

namespace {

const char* source_name(ComplexSource s) {
  switch (s) {
    case ComplexSource::small: return "small";
    case ComplexSource::two_hole: return "two-hole";
    case ComplexSource::file: return "file";
  }
  return "small";
}

const char* guard_name(GuardPolicy g) {
  switch (g) {
    case GuardPolicy::system: return "system";
    case GuardPolicy::dictionary: return "dictionary";
    case GuardPolicy::none: return "none";
  }
  return "system";
}

GuardPolicy parse_guard(const std::string& s) {
  if (s == "system") return GuardPolicy::system;
  if (s == "dictionary") return GuardPolicy::dictionary;
  if (s == "none") return GuardPolicy::none;
  throw Error(Errc::invalid_argument, "unknown guard policy '" + s + "'");
}

Json indices_json(const std::vector<Index>& v) {
  Json j = Json::array();
  for (Index i : v) j.push_back(i);
  return j;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json j = Json::array();
  for (Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

/// Runs body(t) for t in [0, n) on up to `threads` workers. Each index is
/// handled exactly once; callers write results into slot t.
template <class Body>
void parallel_for(Index n, Index threads, Body body) {
  const Index workers = std::clamp<Index>(threads, 1, std::max<Index>(n, 1));
  if (workers == 1) {
    for (Index t = 0; t < n; ++t) body(t);
    return;
  }
  std::vector<std::thread> pool;
  for (Index w = 0; w < workers; ++w) {
    pool.emplace_back([=, &body] {
      for (Index t = w; t < n; t += workers) body(t);
    });
  }
  for (auto& th : pool) th.join();
}

struct TrialError {
  double x0 = 0.0;
  double x2 = 0.0;
  double r1 = 0.0;
};

}  // namespace

void ExperimentConfig::validate() const {
  if (w0 < 0 || w2 < 0 || r1 < 0) throw Error(Errc::invalid_argument, "bandwidths must be nonnegative");
  if (w0 + w2 + r1 < 1) throw Error(Errc::invalid_argument, "total bandwidth W1 must be positive");
  if (num_shifts < 1) throw Error(Errc::invalid_argument, "P must be >= 1");
  if (sample_sizes.empty()) throw Error(Errc::invalid_argument, "no sampling-set sizes given");
  for (Index s : sample_sizes) {
    if (s < 1) throw Error(Errc::invalid_argument, "sampling-set sizes must be positive");
  }
  for (double v : variances) {
    if (!(v >= 0.0)) throw Error(Errc::negative_variance, "variance list must be nonnegative");
  }
  if (trials < 1) throw Error(Errc::invalid_argument, "trials must be >= 1");
  if (max_retries < 1) throw Error(Errc::invalid_argument, "max_retries must be >= 1");
  if (threads < 1) throw Error(Errc::invalid_argument, "threads must be >= 1");
  if (source == ComplexSource::file && complex_path.empty()) {
    throw Error(Errc::invalid_argument, "file source needs a complex path");
  }
  if (source == ComplexSource::two_hole) two_hole.validate();
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j;
  j["complex"] = cfg.source == ComplexSource::file ? cfg.complex_path : source_name(cfg.source);
  if (cfg.source == ComplexSource::two_hole) {
    const auto& th = cfg.two_hole;
    j["two_hole"] = {
        {"num_points", th.num_points},
        {"seed", th.seed},
        {"hole_centers", {{th.hole_centers[0].x, th.hole_centers[0].y}, {th.hole_centers[1].x, th.hole_centers[1].y}}},
        {"hole_radii", {th.hole_radii[0], th.hole_radii[1]}},
        {"box", {th.box_min.x, th.box_min.y, th.box_max.x, th.box_max.y}},
    };
  }
  j["w0"] = cfg.w0;
  j["w2"] = cfg.w2;
  j["r1"] = cfg.r1;
  j["P"] = cfg.num_shifts;
  j["sample_sizes"] = indices_json(cfg.sample_sizes);
  j["variances"] = cfg.variances;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["spectral_scaling"] = cfg.spectral_scaling;
  j["per_trial_resampling"] = cfg.per_trial_resampling;
  j["guard"] = guard_name(cfg.guard);
  j["max_retries"] = cfg.max_retries;
  j["zero_tol"] = cfg.zero_tol;
  j["tolerance"] = cfg.tolerance;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig cfg) {
  try {
    if (!j.is_object()) throw Error(Errc::malformed_file, "config must be a JSON object");
    if (j.contains("complex")) {
      const auto name = j["complex"].get<std::string>();
      if (name == "small") {
        cfg.source = ComplexSource::small;
      } else if (name == "two-hole") {
        cfg.source = ComplexSource::two_hole;
      } else {
        cfg.source = ComplexSource::file;
        cfg.complex_path = name;
      }
    }
    if (j.contains("two_hole")) {
      const auto& th = j["two_hole"];
      auto& out = cfg.two_hole;
      out.num_points = th.value("num_points", out.num_points);
      out.seed = th.value("seed", out.seed);
      if (th.contains("hole_centers")) {
        for (std::size_t h = 0; h < 2; ++h) {
          out.hole_centers[h] = {th["hole_centers"].at(h).at(0).get<double>(),
                                 th["hole_centers"].at(h).at(1).get<double>()};
        }
      }
      if (th.contains("hole_radii")) {
        for (std::size_t h = 0; h < 2; ++h) out.hole_radii[h] = th["hole_radii"].at(h).get<double>();
      }
      if (th.contains("box")) {
        const auto& b = th["box"];
        out.box_min = {b.at(0).get<double>(), b.at(1).get<double>()};
        out.box_max = {b.at(2).get<double>(), b.at(3).get<double>()};
      }
    }
    cfg.w0 = j.value("w0", cfg.w0);
    cfg.w2 = j.value("w2", cfg.w2);
    cfg.r1 = j.value("r1", cfg.r1);
    cfg.num_shifts = j.value("P", cfg.num_shifts);
    if (j.contains("sample_sizes")) cfg.sample_sizes = j["sample_sizes"].get<std::vector<Index>>();
    if (j.contains("variances")) cfg.variances = j["variances"].get<std::vector<double>>();
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.spectral_scaling = j.value("spectral_scaling", cfg.spectral_scaling);
    cfg.per_trial_resampling = j.value("per_trial_resampling", cfg.per_trial_resampling);
    if (j.contains("guard")) cfg.guard = parse_guard(j["guard"].get<std::string>());
    cfg.max_retries = j.value("max_retries", cfg.max_retries);
    cfg.zero_tol = j.value("zero_tol", cfg.zero_tol);
    cfg.tolerance = j.value("tolerance", cfg.tolerance);
    cfg.threads = j.value("threads", cfg.threads);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::malformed_file, std::string("config: ") + ex.what());
  }
  return cfg;
}

SimplicialComplex load_configured_complex(const ExperimentConfig& cfg, std::vector<Point2>* points) {
  switch (cfg.source) {
    case ComplexSource::small: return small_complex();
    case ComplexSource::two_hole: {
      TwoHoleComplex th = two_hole_complex(cfg.two_hole);
      if (points != nullptr) *points = std::move(th.points);
      return std::move(th.complex);
    }
    case ComplexSource::file: return load_complex(cfg.complex_path);
  }
  throw Error(Errc::invalid_argument, "unknown complex source");
}

Problem prepare_problem(const ExperimentConfig& cfg) {
  cfg.validate();
  Problem pr;
  pr.complex = load_configured_complex(cfg, &pr.points);
  pr.laplacians = hodge_laplacians(pr.complex);
  pr.spectra = decompose_laplacians(pr.laplacians);

  const SpectrumSplit s0 = split_spectrum(pr.spectra.l0, cfg.zero_tol);
  const SpectrumSplit s2 = split_spectrum(pr.spectra.l2, cfg.zero_tol);
  if (cfg.w0 > s0.range_part.size()) {
    throw Error(Errc::bandwidth_exceeded, "w0=" + std::to_string(cfg.w0) + " but range(L0) has dim " +
                                              std::to_string(s0.range_part.size()));
  }
  if (cfg.w2 > s2.range_part.size()) {
    throw Error(Errc::bandwidth_exceeded, "w2=" + std::to_string(cfg.w2) + " but range(L2) has dim " +
                                              std::to_string(s2.range_part.size()));
  }
  pr.w0_requested = cfg.w0;
  pr.w2_requested = cfg.w2;
  const Index w0 = std::min(cfg.w0, distinct_prefix_length(s0.range_part.eigenvalues));
  const Index w2 = std::min(cfg.w2, distinct_prefix_length(s2.range_part.eigenvalues));

  pr.bases = make_spectral_bases(pr.complex, pr.spectra, w0, w2, cfg.zero_tol);
  if (cfg.r1 > pr.bases.harmonic_dim()) {
    throw Error(Errc::bandwidth_exceeded, "r1=" + std::to_string(cfg.r1) + " but N(L1) has dim " +
                                              std::to_string(pr.bases.harmonic_dim()));
  }
  pr.blocks = {w0, w2, cfg.r1};
  pr.dictionary = recovery_dictionary(pr.bases, cfg.r1);

  pr.scale = 1.0;
  if (cfg.spectral_scaling && pr.spectra.l1.size() > 0) {
    const double top = pr.spectra.l1.eigenvalues.maxCoeff();
    if (top > 0.0) pr.scale = 1.0 / top;
  }
  pr.shift_operator = pr.scale * pr.laplacians.l1;
  pr.lambda_low = pr.scale * pr.bases.lambda_low;
  pr.lambda_up = pr.scale * pr.bases.lambda_up;
  return pr;
}

Eigen::MatrixXd problem_vandermonde(const Problem& problem, Index p_shifts) {
  return build_vandermonde(problem.lambda_low, problem.lambda_up, problem.blocks.r1, p_shifts);
}

std::uint64_t sampling_seed(std::uint64_t master, Index size, std::optional<Index> trial) {
  const std::uint64_t base = sub_seed(master, SeedPurpose::sampling, static_cast<std::uint64_t>(size));
  if (!trial) return base;
  return sub_seed(base, SeedPurpose::sampling, static_cast<std::uint64_t>(*trial) + 1);
}

SampleChoice choose_guarded_set(const Problem& problem, Index p_shifts, Index size, std::uint64_t seed,
                                GuardPolicy policy, Index max_retries) {
  const Index n1 = problem.complex.num_edges();
  SampleChoice choice;
  try {
    SampleSelection sel;
    switch (policy) {
      case GuardPolicy::none:
        sel = choose_sampling_set(n1, size, seed);
        break;
      case GuardPolicy::dictionary:
        sel = choose_sampling_set(n1, size, seed, problem.dictionary, max_retries);
        break;
      case GuardPolicy::system: {
        const Eigen::MatrixXd v = problem_vandermonde(problem, p_shifts);
        const Index w1 = problem.blocks.total();
        SampleGuard guard = [&](std::span<const Index> rows) {
          return numerical_rank(khatri_rao_system(v, select_rows(problem.dictionary, rows)),
                                kSingularCutoff) == w1;
        };
        sel = choose_sampling_set(n1, size, seed, guard, max_retries);
        break;
      }
    }
    choice.indices = std::move(sel.indices);
    choice.attempts = sel.attempts;
    choice.guard_satisfied = true;
  } catch (const Error& e) {
    if (e.code() != Errc::retries_exhausted) throw;
    choice.indices = choose_sampling_set(n1, size, seed).indices;
    choice.attempts = max_retries;
    choice.guard_satisfied = false;
  }
  return choice;
}

double relative_error(const Eigen::VectorXd& truth, const Eigen::VectorXd& estimate) {
  const double err = (truth - estimate).norm();
  const double ref = truth.norm();
  return ref > 0.0 ? err / ref : err;
}

NoiselessReport run_noiseless(const ExperimentConfig& cfg) { return run_noiseless(cfg, prepare_problem(cfg)); }

NoiselessReport run_noiseless(const ExperimentConfig& cfg, const Problem& pr) {
  cfg.validate();
  const Index size = cfg.sample_sizes.front();
  const Index p_shifts = cfg.num_shifts;
  const Blocks& b = pr.blocks;

  NoiselessReport rep;
  rep.signal = synthesize_bandlimited(pr.bases, b.w0, b.w2, b.r1, sub_seed(cfg.seed, SeedPurpose::synthesis));

  const std::uint64_t sseed = sampling_seed(cfg.seed, size);
  rep.choice = choose_guarded_set(pr, p_shifts, size, sseed, cfg.guard, cfg.max_retries);
  rep.plan = {p_shifts, rep.choice.indices, sseed};

  const Eigen::MatrixXd y1 = aggregate(pr.shift_operator, rep.signal.x1, p_shifts);
  rep.observations = observe(y1, rep.plan);

  const Eigen::MatrixXd v = problem_vandermonde(pr, p_shifts);
  const RecoverySystem sys = assemble_system(v, pr.dictionary, rep.plan.sample_set, b);
  rep.rank = sys.rank;
  rep.feasibility = check_feasibility(b.w0, b.w2, b.r1, pr.lambda_low, pr.lambda_up, p_shifts,
                                      rep.plan.sample_set, pr.dictionary);

  if (sys.rank.full_column_rank()) {
    rep.result = recover(sys, rep.observations, pr.bases);
    rep.rel_error_x0 = relative_error(rep.signal.x0, rep.result->x0_ls);
    rep.rel_error_x2 = relative_error(rep.signal.x2, rep.result->x2_ls);
    rep.rel_error_r1 = relative_error(rep.signal.r1, rep.result->r1_ls);
    rep.passed = rep.rel_error_x0 <= cfg.tolerance && rep.rel_error_x2 <= cfg.tolerance &&
                 rep.rel_error_r1 <= cfg.tolerance;
  }
  return rep;
}

Json rank_to_json(const RankReport& r) {
  Json j;
  j["rows"] = r.rows;
  j["cols"] = r.cols;
  j["rank"] = r.rank;
  j["full_column_rank"] = r.full_column_rank();
  j["sigma_max"] = r.sigma_max;
  j["sigma_min"] = r.sigma_min;
  j["condition"] = std::isfinite(r.condition) ? Json(r.condition) : Json(nullptr);
  return j;
}

Json feasibility_to_json(const FeasibilityReport& f) {
  Json j;
  j["p_required"] = f.p_required;
  j["p_supplied"] = f.p_supplied;
  j["p_ok"] = f.p_ok;
  j["s_required"] = f.s_required;
  j["s_supplied"] = f.s_supplied;
  j["s_ok"] = f.s_ok;
  j["eigenvalues_distinct"] = f.eigenvalues_distinct;
  j["min_eigenvalue_gap"] = std::isfinite(f.min_eigenvalue_gap) ? Json(f.min_eigenvalue_gap) : Json(nullptr);
  j["phi_rows_full_rank"] = f.phi_rows_full_rank;
  j["phi_rank"] = f.phi_rank;
  j["harmonic_rows_rank"] = f.harmonic_rows_rank;
  j["unobserved_columns"] = f.unobserved_columns;
  j["overall"] = f.overall;
  return j;
}

Json recovery_result_to_json(const RecoveryResult& r, const MultiOrderSignal* truth) {
  Json j;
  j["x_hat0"] = vector_json(r.x_hat0);
  j["x_hat2"] = vector_json(r.x_hat2);
  j["r_hat1"] = vector_json(r.r_hat1);
  j["residual_norm"] = r.residual_norm;
  j["rank"] = rank_to_json(r.rank);
  if (truth != nullptr) {
    j["relative_errors"] = {
        {"x0", relative_error(truth->x0, r.x0_ls)},
        {"x2", relative_error(truth->x2, r.x2_ls)},
        {"r1", relative_error(truth->r1, r.r1_ls)},
    };
  }
  return j;
}

Json noiseless_report_to_json(const ExperimentConfig& cfg, const Problem& pr, const NoiselessReport& rep) {
  Json j;
  j["config"] = config_to_json(cfg);
  j["complex"] = {{"num_nodes", pr.complex.num_nodes()},
                  {"num_edges", pr.complex.num_edges()},
                  {"num_triangles", pr.complex.num_triangles()},
                  {"harmonic_dim", pr.bases.harmonic_dim()},
                  {"hash", complex_hash(pr.complex)}};
  j["bandwidths"] = {{"w0_requested", pr.w0_requested},
                     {"w0", pr.blocks.w0},
                     {"w2_requested", pr.w2_requested},
                     {"w2", pr.blocks.w2},
                     {"r1", pr.blocks.r1}};
  j["scale"] = pr.scale;
  j["sampling"] = {{"P", rep.plan.num_shifts},
                   {"sample_set", indices_json(rep.plan.sample_set)},
                   {"seed", rep.plan.seed},
                   {"attempts", rep.choice.attempts},
                   {"guard_satisfied", rep.choice.guard_satisfied}};
  j["feasibility"] = feasibility_to_json(rep.feasibility);
  j["system_rank"] = rank_to_json(rep.rank);
  if (rep.result) {
    j["status"] = "recovered";
    j["recovery"] = recovery_result_to_json(*rep.result, &rep.signal);
  } else {
    j["status"] = "rank_deficient";
    j["recovery"] = nullptr;
  }
  j["tolerance"] = cfg.tolerance;
  j["passed"] = rep.passed;
  return j;
}

SweepResult run_mse_sweep(const ExperimentConfig& cfg) { return run_mse_sweep(cfg, prepare_problem(cfg)); }

SweepResult run_mse_sweep(const ExperimentConfig& cfg, const Problem& pr) {
  cfg.validate();
  const Blocks& b = pr.blocks;
  const Index p_shifts = cfg.num_shifts;
  const Index n1 = pr.complex.num_edges();
  const Eigen::MatrixXd v = problem_vandermonde(pr, p_shifts);
  const MultiOrderSignal signal =
      synthesize_bandlimited(pr.bases, b.w0, b.w2, b.r1, sub_seed(cfg.seed, SeedPurpose::synthesis));
  const Eigen::MatrixXd y_clean = aggregate(pr.shift_operator, signal.x1, p_shifts);

  // Unit-variance noise per trial, shared across cells; aggregation is
  // linear, so only its aggregated form is needed.
  std::vector<Eigen::MatrixXd> y_noise(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, cfg.threads, [&](Index t) {
    const Eigen::VectorXd g = gaussian_noise(n1, 1.0, sub_seed(cfg.seed, SeedPurpose::noise, t));
    y_noise[t] = aggregate(pr.shift_operator, g, p_shifts);
  });

  SweepResult out;
  out.blocks = b;

  struct Cell {
    Index size = 0;
    std::optional<RecoverySystem> system;  // shared set; empty with per-trial resampling
  };
  std::vector<Cell> cells;
  for (Index size : cfg.sample_sizes) {
    Cell cell{size, std::nullopt};
    if (size > n1) {
      out.skipped.push_back({size, "sample size exceeds edge count " + std::to_string(n1)});
      std::clog << "sweep: skipping |S|=" << size << ": " << out.skipped.back().reason << '\n';
      continue;
    }
    if (!cfg.per_trial_resampling) {
      SampleChoice choice =
          choose_guarded_set(pr, p_shifts, size, sampling_seed(cfg.seed, size), cfg.guard, cfg.max_retries);
      RecoverySystem sys = assemble_system(v, pr.dictionary, choice.indices, b);
      out.sample_sets.emplace_back(size, std::move(choice));
      if (!sys.rank.full_column_rank()) {
        out.skipped.push_back({size, "system rank " + std::to_string(sys.rank.rank) + " < W1 = " +
                                         std::to_string(b.total())});
        std::clog << "sweep: skipping |S|=" << size << ": " << out.skipped.back().reason << '\n';
        continue;
      }
      cell.system = std::move(sys);
    }
    cells.push_back(std::move(cell));
  }

  for (double variance : cfg.variances) {
    const double sigma = std::sqrt(variance);
    for (const Cell& cell : cells) {
      std::vector<TrialError> errs(static_cast<std::size_t>(cfg.trials));
      parallel_for(cfg.trials, cfg.threads, [&](Index t) {
        std::optional<RecoverySystem> own;
        const RecoverySystem* sys = cell.system ? &*cell.system : nullptr;
        if (sys == nullptr) {
          const SampleChoice choice = choose_guarded_set(pr, p_shifts, cell.size,
                                                         sampling_seed(cfg.seed, cell.size, t), cfg.guard,
                                                         cfg.max_retries);
          own = assemble_system(v, pr.dictionary, choice.indices, b);
          sys = &*own;
        }
        const Eigen::MatrixXd y = y_clean + sigma * y_noise[t];
        const Observations obs = observe(y, SamplingPlan{p_shifts, sys->sample_set, 0});
        const RecoveryResult r = recover(*sys, obs, pr.bases);
        errs[t] = {(signal.x0 - r.x0_ls).squaredNorm(), (signal.x2 - r.x2_ls).squaredNorm(),
                   (signal.r1 - r.r1_ls).squaredNorm()};
      });

      SweepRow row;
      row.variance = variance;
      row.sample_size = cell.size;
      row.trials = cfg.trials;
      row.num_shifts = p_shifts;
      for (const TrialError& e : errs) {
        row.mse_x0 += e.x0;
        row.mse_x2 += e.x2;
        row.mse_r1 += e.r1;
      }
      row.mse_x0 /= static_cast<double>(cfg.trials);
      row.mse_x2 /= static_cast<double>(cfg.trials);
      row.mse_r1 /= static_cast<double>(cfg.trials);
      row.mse = (row.mse_x0 + row.mse_x2 + row.mse_r1) / 3.0;
      out.rows.push_back(row);
    }
  }
  return out;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "variance,sample_size,mse,mse_x0,mse_x2,mse_r1,trials,P\n";
  for (const SweepRow& r : result.rows) {
    os << format_double(r.variance) << ',' << r.sample_size << ',' << format_double(r.mse) << ','
       << format_double(r.mse_x0) << ',' << format_double(r.mse_x2) << ',' << format_double(r.mse_r1)
       << ',' << r.trials << ',' << r.num_shifts << '\n';
  }
  return os.str();
}

Json sweep_to_json(const ExperimentConfig& cfg, const Problem& pr, const SweepResult& result) {
  Json j;
  j["config"] = config_to_json(cfg);
  j["complex"] = {{"num_nodes", pr.complex.num_nodes()},
                  {"num_edges", pr.complex.num_edges()},
                  {"num_triangles", pr.complex.num_triangles()},
                  {"harmonic_dim", pr.bases.harmonic_dim()},
                  {"hash", complex_hash(pr.complex)}};
  j["bandwidths"] = {{"w0", result.blocks.w0}, {"w2", result.blocks.w2}, {"r1", result.blocks.r1}};
  j["scale"] = pr.scale;
  Json sets = Json::array();
  for (const auto& [size, choice] : result.sample_sets) {
    sets.push_back({{"size", size},
                    {"sample_set", indices_json(choice.indices)},
                    {"attempts", choice.attempts},
                    {"guard_satisfied", choice.guard_satisfied}});
  }
  j["sample_sets"] = std::move(sets);
  Json skipped = Json::array();
  for (const auto& s : result.skipped) skipped.push_back({{"size", s.sample_size}, {"reason", s.reason}});
  j["skipped"] = std::move(skipped);
  return j;
}

}  // namespace hodgesamp
