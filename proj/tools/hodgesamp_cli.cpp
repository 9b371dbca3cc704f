// hodgesamp: sample edge flows through Hodge-Laplacian aggregation and recover
// the node, triangle and harmonic signals behind them.
//
//   hodgesamp recover --complex small --w0 4 --w2 1 --r1 2 --shifts 6 --sample-sizes 2
//   hodgesamp sweep   --complex two-hole --points 150 --w0 20 --w2 20 --shifts 10 --scale-spectrum
//   hodgesamp gen     --complex two-hole --out data
//   hodgesamp check   --complex small --shifts 5
//
// Every run writes into --out; identical flags give byte-identical files.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hodgesamp/experiment.hpp"

namespace fs = std::filesystem;
using namespace hodgesamp;

namespace {

struct Flags {
  std::string config_path;
  std::string complex = "small";
  Index points = 0;
  std::uint64_t two_hole_seed = 0;
  double hole_radius = 0.0;
  Index w0 = 0, w2 = 0, r1 = 0, shifts = 0, trials = 0, threads = 0, max_retries = 0;
  std::vector<Index> sample_sizes;
  std::vector<double> variances;
  std::uint64_t seed = 0;
  std::string out = "out";
  bool scale_spectrum = false;
  bool per_trial = false;
  std::string guard = "system";
  double tolerance = 0.0;
};

struct Options {
  CLI::Option* complex = nullptr;
  CLI::Option* points = nullptr;
  CLI::Option* two_hole_seed = nullptr;
  CLI::Option* hole_radius = nullptr;
  CLI::Option* w0 = nullptr;
  CLI::Option* w2 = nullptr;
  CLI::Option* r1 = nullptr;
  CLI::Option* shifts = nullptr;
  CLI::Option* sample_sizes = nullptr;
  CLI::Option* variances = nullptr;
  CLI::Option* trials = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* scale = nullptr;
  CLI::Option* per_trial = nullptr;
  CLI::Option* guard = nullptr;
  CLI::Option* threads = nullptr;
  CLI::Option* max_retries = nullptr;
  CLI::Option* tolerance = nullptr;
};

void add_common(CLI::App* sub, Flags& f, Options& o) {
  sub->add_option("--config", f.config_path, "JSON config; explicit flags override it")->check(CLI::ExistingFile);
  o.complex = sub->add_option("--complex", f.complex, "small | two-hole | path to complex JSON");
  o.points = sub->add_option("--points", f.points, "two-hole point count");
  o.two_hole_seed = sub->add_option("--two-hole-seed", f.two_hole_seed, "two-hole point-cloud seed");
  o.hole_radius = sub->add_option("--hole-radius", f.hole_radius, "radius of both two-hole holes");
  o.w0 = sub->add_option("--w0", f.w0, "node bandwidth W0");
  o.w2 = sub->add_option("--w2", f.w2, "triangle bandwidth W2");
  o.r1 = sub->add_option("--r1", f.r1, "harmonic bandwidth R1");
  o.shifts = sub->add_option("--shifts,-P", f.shifts, "number of shifts P");
  o.sample_sizes = sub->add_option("--sample-sizes,-S", f.sample_sizes, "sampling-set sizes")->delimiter(',');
  o.seed = sub->add_option("--seed", f.seed, "master seed");
  o.out = sub->add_option("--out,-o", f.out, "output directory");
  o.scale = sub->add_flag("--scale-spectrum", f.scale_spectrum, "divide L1 by its largest eigenvalue");
  o.guard = sub->add_option("--guard", f.guard, "sampling-set screen")
                ->check(CLI::IsMember({"system", "dictionary", "none"}));
  o.max_retries = sub->add_option("--max-retries", f.max_retries, "redraws allowed by the guard");
}

void add_sweep_flags(CLI::App* sub, Flags& f, Options& o) {
  o.variances = sub->add_option("--variances", f.variances, "noise variances")->delimiter(',');
  o.trials = sub->add_option("--trials", f.trials, "noise realizations per cell");
  o.per_trial = sub->add_flag("--per-trial-resampling", f.per_trial, "redraw the sampling set every trial");
  o.threads = sub->add_option("--threads", f.threads, "worker threads");
}

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

ExperimentConfig make_config(const Flags& f, const Options& o, ExperimentConfig cfg) {
  if (!f.config_path.empty()) cfg = config_from_json(read_json(f.config_path), cfg);
  if (given(o.complex)) {
    if (f.complex == "small") {
      cfg.source = ComplexSource::small;
    } else if (f.complex == "two-hole") {
      cfg.source = ComplexSource::two_hole;
    } else {
      cfg.source = ComplexSource::file;
      cfg.complex_path = f.complex;
    }
  }
  if (given(o.points)) cfg.two_hole.num_points = f.points;
  if (given(o.two_hole_seed)) cfg.two_hole.seed = f.two_hole_seed;
  if (given(o.hole_radius)) cfg.two_hole.hole_radii = {f.hole_radius, f.hole_radius};
  if (given(o.w0)) cfg.w0 = f.w0;
  if (given(o.w2)) cfg.w2 = f.w2;
  if (given(o.r1)) cfg.r1 = f.r1;
  if (given(o.shifts)) cfg.num_shifts = f.shifts;
  if (given(o.sample_sizes)) cfg.sample_sizes = f.sample_sizes;
  if (given(o.variances)) cfg.variances = f.variances;
  if (given(o.trials)) cfg.trials = f.trials;
  if (given(o.seed)) cfg.seed = f.seed;
  if (given(o.out)) cfg.output_dir = f.out;
  if (given(o.scale)) cfg.spectral_scaling = f.scale_spectrum;
  if (given(o.per_trial)) cfg.per_trial_resampling = f.per_trial;
  if (given(o.guard)) {
    cfg.guard = f.guard == "none" ? GuardPolicy::none
                : f.guard == "dictionary" ? GuardPolicy::dictionary
                                          : GuardPolicy::system;
  }
  if (given(o.threads)) cfg.threads = f.threads;
  if (given(o.max_retries)) cfg.max_retries = f.max_retries;
  if (given(o.tolerance)) cfg.tolerance = f.tolerance;
  cfg.validate();
  return cfg;
}

void print_bandwidths(const Problem& pr) {
  std::cout << "complex: " << pr.complex.num_nodes() << " nodes, " << pr.complex.num_edges() << " edges, "
            << pr.complex.num_triangles() << " triangles, dim N(L1) = " << pr.bases.harmonic_dim() << '\n';
  std::cout << "bandwidths: W0 = " << pr.blocks.w0 << " (asked " << pr.w0_requested << "), W2 = " << pr.blocks.w2
            << " (asked " << pr.w2_requested << "), R1 = " << pr.blocks.r1 << '\n';
}

int cmd_recover(const ExperimentConfig& cfg) {
  const Problem pr = prepare_problem(cfg);
  print_bandwidths(pr);
  const NoiselessReport rep = run_noiseless(cfg, pr);
  const fs::path out = cfg.output_dir;

  write_json(out / "recover.json", noiseless_report_to_json(cfg, pr, rep));
  write_vector_csv(out / "x0.csv", rep.signal.x0);
  write_vector_csv(out / "x2.csv", rep.signal.x2);
  write_vector_csv(out / "r1.csv", rep.signal.r1);
  write_vector_csv(out / "x1.csv", rep.signal.x1);
  write_json(out / "signals.json", Json{{"complex_hash", complex_hash(pr.complex)},
                                        {"W0", pr.blocks.w0},
                                        {"W2", pr.blocks.w2},
                                        {"R1", pr.blocks.r1},
                                        {"seed", cfg.seed}});
  write_observations(out / "observations.csv", rep.observations, rep.plan);
  if (rep.result) {
    write_vector_csv(out / "x0_ls.csv", rep.result->x0_ls);
    write_vector_csv(out / "x2_ls.csv", rep.result->x2_ls);
    write_vector_csv(out / "r1_ls.csv", rep.result->r1_ls);
  }

  std::cout << "P = " << rep.plan.num_shifts << ", |S| = " << rep.plan.sample_set.size()
            << ", sufficient conditions " << (rep.feasibility.overall ? "met" : "NOT met")
            << ", rank(A) = " << rep.rank.rank << " / " << rep.rank.cols << '\n';
  if (!rep.choice.guard_satisfied) std::cout << "warning: no sampling set passed the guard\n";
  if (!rep.result) {
    std::cout << "rank deficient: recovery not attempted\n";
    return 1;
  }
  std::cout << "relative errors: x0 " << rep.rel_error_x0 << ", x2 " << rep.rel_error_x2 << ", r1 "
            << rep.rel_error_r1 << '\n';
  std::cout << (rep.passed ? "recovered" : "recovery error above tolerance") << '\n';
  return rep.passed ? 0 : 1;
}

int cmd_sweep(const ExperimentConfig& cfg) {
  const Problem pr = prepare_problem(cfg);
  print_bandwidths(pr);
  const SweepResult res = run_mse_sweep(cfg, pr);
  const fs::path out = cfg.output_dir;
  write_text(out / "sweep.csv", sweep_to_csv(res));
  write_json(out / "sweep.json", sweep_to_json(cfg, pr, res));
  for (const SweepRow& r : res.rows) {
    std::cout << "variance " << r.variance << "  |S| " << r.sample_size << "  mse " << r.mse << '\n';
  }
  for (const SweepSkip& s : res.skipped) std::cout << "skipped |S| = " << s.sample_size << ": " << s.reason << '\n';
  return res.rows.empty() ? 1 : 0;
}

int cmd_gen(const ExperimentConfig& cfg) {
  std::vector<Point2> points;
  const SimplicialComplex c = load_configured_complex(cfg, &points);
  const fs::path out = cfg.output_dir;
  save_complex(out / "complex.json", c);
  if (!points.empty()) write_points_csv(out / "points.csv", points);
  std::cout << c.num_nodes() << " nodes, " << c.num_edges() << " edges, " << c.num_triangles()
            << " triangles, beta1 = " << first_betti_number(c) << ", hash " << complex_hash(c) << '\n';
  return 0;
}

int cmd_check(const ExperimentConfig& cfg) {
  const Problem pr = prepare_problem(cfg);
  print_bandwidths(pr);
  const Index size = cfg.sample_sizes.front();
  const std::uint64_t sseed = sampling_seed(cfg.seed, size);
  const SampleChoice choice = choose_guarded_set(pr, cfg.num_shifts, size, sseed, cfg.guard, cfg.max_retries);
  const FeasibilityReport f = check_feasibility(pr.blocks.w0, pr.blocks.w2, pr.blocks.r1, pr.lambda_low,
                                                pr.lambda_up, cfg.num_shifts, choice.indices, pr.dictionary);
  const RecoverySystem sys =
      assemble_system(problem_vandermonde(pr, cfg.num_shifts), pr.dictionary, choice.indices, pr.blocks);

  Json j;
  j["config"] = config_to_json(cfg);
  j["sample_set"] = choice.indices;
  j["guard_satisfied"] = choice.guard_satisfied;
  j["feasibility"] = feasibility_to_json(f);
  j["system_rank"] = rank_to_json(sys.rank);
  write_json(fs::path(cfg.output_dir) / "check.json", j);

  std::cout << "P >= " << f.p_required << ": " << (f.p_ok ? "yes" : "no") << '\n'
            << "|S| >= " << f.s_required << ": " << (f.s_ok ? "yes" : "no") << '\n'
            << "distinct eigenvalues: " << (f.eigenvalues_distinct ? "yes" : "no") << '\n'
            << "rank(Phi D) = " << f.phi_rank << (f.phi_rows_full_rank ? " ok" : " too small") << '\n'
            << "rank(A) = " << sys.rank.rank << " / " << sys.rank.cols << '\n'
            << (f.overall ? "feasible" : "infeasible") << '\n';
  return f.overall ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling and recovery of multi-order simplicial signals"};
  app.require_subcommand(1);

  Flags f;
  Options o_recover, o_sweep, o_gen, o_check;

  auto* recover = app.add_subcommand("recover", "single noiseless synthesize/sample/recover run");
  add_common(recover, f, o_recover);
  o_recover.tolerance = recover->add_option("--tolerance", f.tolerance, "max relative error for success");

  auto* sweep = app.add_subcommand("sweep", "MSE over noise variance and sampling-set size");
  add_common(sweep, f, o_sweep);
  add_sweep_flags(sweep, f, o_sweep);

  auto* gen = app.add_subcommand("gen", "write a complex (and points) to disk");
  add_common(gen, f, o_gen);

  auto* check = app.add_subcommand("check", "feasibility of a configuration");
  add_common(check, f, o_check);

  CLI11_PARSE(app, argc, argv);

  try {
    if (recover->parsed()) return cmd_recover(make_config(f, o_recover, {}));
    if (check->parsed()) return cmd_check(make_config(f, o_check, {}));
    if (gen->parsed()) {
      ExperimentConfig base;
      base.source = ComplexSource::two_hole;
      return cmd_gen(make_config(f, o_gen, base));
    }
    if (sweep->parsed()) {
      ExperimentConfig base;
      base.source = ComplexSource::two_hole;
      base.w0 = 50;
      base.w2 = 50;
      base.r1 = 2;
      base.num_shifts = 10;
      base.spectral_scaling = true;
      base.sample_sizes = {50, 100, 200};
      base.variances = {0.0, 1e-6, 1e-5, 1e-4, 1e-3};
      return cmd_sweep(make_config(f, o_sweep, base));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
