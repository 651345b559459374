#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abq/diagnostics.hpp"
#include "abq/harness.hpp"
#include "abq/io.hpp"

using namespace abq;
using nlohmann::json;

namespace {

Metric metric_from_string(const std::string& s) {
  if (s == "entanglement_entropy") return Metric::EntanglementEntropy;
  if (s == "participation_ratio") return Metric::ParticipationRatio;
  if (s == "annealing_entropy") return Metric::AnnealingEntropy;
  if (s == "infidelity") return Metric::Infidelity;
  if (s == "residual_energy") return Metric::ResidualEnergy;
  throw std::invalid_argument("unknown metric: " + s);
}

std::string ensemble_path(const std::string& out_dir, const Ensemble& e) {
  return out_dir + "/ensemble_n" + std::to_string(e.n) + "_m" + std::to_string(e.m) +
         ".json";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statevector experiments on random 1-3-SAT+ instances"};
  app.require_subcommand(1);

  uint64_t seed = 0;
  std::string config_path;
  ExperimentConfig cfg;
  int threads = 1;
  std::string out_dir = "out";

  app.add_option("--seed", seed, "experiment seed")->required();
  app.add_option("--config", config_path, "experiment config JSON");
  app.add_option("--threads", threads, "worker threads (never changes results)");
  app.add_option("--out", out_dir, "output directory");

  std::vector<int> n_list;
  std::vector<double> alphas;
  std::vector<int> levels;
  std::vector<std::string> algos;
  std::string init, problem, gradient;
  int instances = 0, samples = 0, max_iterations = 0;
  auto* n_opt = app.add_option("--n", n_list, "variable counts");
  auto* a_opt = app.add_option("--alpha", alphas, "clause densities");
  auto* p_opt = app.add_option("--levels", levels, "circuit levels");
  auto* algo_opt = app.add_option("--algos", algos, "qaoa, ab_qaoa, ofab");
  auto* init_opt = app.add_option("--init", init, "tqa or fourier");
  auto* prob_opt = app.add_option("--problem", problem, "decision or max");
  auto* grad_opt = app.add_option("--gradient", gradient, "central_difference or adjoint");
  auto* inst_opt = app.add_option("--instances", instances, "instances per cell");
  auto* samp_opt = app.add_option("--samples", samples, "optimization samples R");
  auto* iter_opt = app.add_option("--max-iterations", max_iterations, "iteration cap");

  auto* gen = app.add_subcommand("gen", "generate and store instance ensembles");

  auto* runc = app.add_subcommand("run", "optimize one instance with a full trace");
  std::string run_algo = "ab_qaoa", instance_file;
  int run_p = 4, run_index = 0;
  bool include_state = false;
  runc->add_option("--algo", run_algo, "qaoa or ab_qaoa");
  runc->add_option("-p,--p", run_p, "circuit level");
  runc->add_option("--index", run_index, "instance index inside the ensemble");
  runc->add_option("--instance-file", instance_file, "instance JSON instead of ensemble");
  runc->add_flag("--include-state", include_state, "embed final amplitudes in the trace");

  auto* sweepc = app.add_subcommand("sweep", "aggregate runs over (algo, n, alpha, p)");

  auto* levelsc = app.add_subcommand("levels", "levels-to-solution protocol");

  auto* rstudyc = app.add_subcommand("rstudy", "sample-count convergence study");
  std::vector<int> r_grid{1, 2, 5, 10, 15, 20, 25, 30};
  rstudyc->add_option("--r-grid", r_grid, "increasing sample counts");

  auto* diagc = app.add_subcommand("diag", "trajectory diagnostics for one instance");
  std::string diag_algo = "ab_qaoa";
  int diag_p = 8, diag_index = 0;
  std::vector<double> etas{0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<std::string> metric_names{"entanglement_entropy", "participation_ratio",
                                        "annealing_entropy"};
  diagc->add_option("--algo", diag_algo, "qaoa or ab_qaoa");
  diagc->add_option("-p,--p", diag_p, "circuit level");
  diagc->add_option("--index", diag_index, "instance index inside the ensemble");
  diagc->add_option("--etas", etas, "optimization fractions in (0, 1]");
  diagc->add_option("--metrics", metric_names, "metrics to tabulate");

  auto* ofabc = app.add_subcommand("ofab", "optimization-free bias-field training");
  int ofab_p = 16;
  ofabc->add_option("-p,--p", ofab_p, "target level of the chain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) cfg = config_from_json(read_json(config_path));
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.out_dir = out_dir;
    if (n_opt->count()) cfg.n_list = n_list;
    if (a_opt->count()) cfg.alphas = alphas;
    if (p_opt->count()) cfg.levels = levels;
    if (algo_opt->count()) {
      cfg.algorithms.clear();
      for (const std::string& a : algos) cfg.algorithms.push_back(algo_from_string(a));
    }
    if (init_opt->count()) {
      if (init == "tqa")
        cfg.init = InitStrategy::Tqa;
      else if (init == "fourier")
        cfg.init = InitStrategy::Fourier;
      else
        throw std::invalid_argument("unknown init strategy: " + init);
    }
    if (prob_opt->count()) cfg.problem = problem_from_string(problem);
    if (grad_opt->count()) {
      if (gradient == "adjoint")
        cfg.opt.gradient = GradientMethod::Adjoint;
      else if (gradient == "central_difference")
        cfg.opt.gradient = GradientMethod::CentralDifference;
      else
        throw std::invalid_argument("unknown gradient method: " + gradient);
    }
    if (inst_opt->count()) cfg.instances = instances;
    if (samp_opt->count()) {
      cfg.opt.samples = samples;
      cfg.ofab.samples = samples;
    }
    if (iter_opt->count()) cfg.opt.max_iterations = max_iterations;
    validate(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  try {
    std::filesystem::create_directories(cfg.out_dir);
    const json cfg_json = config_to_json(cfg);

    if (*gen) {
      for (int n : cfg.n_list)
        for (double alpha : cfg.alphas) {
          const Ensemble e = make_ensemble(n, alpha, cfg.instances, cfg.seed);
          write_json(ensemble_path(cfg.out_dir, e), ensemble_to_json(e));
          std::printf("wrote %s (%d instances)\n", ensemble_path(cfg.out_dir, e).c_str(),
                      cfg.instances);
        }
      write_json(cfg.out_dir + "/manifest.json", make_manifest(cfg.seed, cfg_json));
      return 0;
    }

    if (*runc) {
      const AlgoKind algo = algo_from_string(run_algo);
      if (algo == AlgoKind::Ofab)
        throw std::invalid_argument("use the ofab subcommand for optimization-free runs");
      Formula f;
      if (!instance_file.empty()) {
        f = instance_from_json(read_json(instance_file));
      } else {
        const Ensemble e =
            make_ensemble(cfg.n_list.front(), cfg.alphas.front(), run_index + 1, cfg.seed);
        f = e.instances[run_index];
      }
      const uint64_t rs =
          instance_run_seed(cfg.seed, algo, f.n, f.num_clauses(), run_index);
      const Algorithm a = algo == AlgoKind::Qaoa ? Algorithm::Qaoa : Algorithm::AbQaoa;
      const RunResult res = run(f, run_p, a, cfg.init, cfg.opt, rs);
      const GroundSolution g = brute_force_ground(f);
      json out = run_result_to_json(res, include_state);
      out["instance"] = instance_to_json(f);
      out["ground_energy"] = g.energy;
      out["verdict"] = to_string(decide_sat(res.best.best_energy, cfg.e_th));
      const std::string path = cfg.out_dir + "/run_" + run_algo + "_p" +
                               std::to_string(run_p) + ".json";
      write_json(path, out);
      std::printf("best energy %.6f (ground %d), verdict %s, N_con %d -> %s\n",
                  res.best.best_energy, g.energy,
                  to_string(decide_sat(res.best.best_energy, cfg.e_th)).c_str(),
                  res.best.n_con, path.c_str());
      return 0;
    }

    if (*sweepc) {
      const SweepResult res = sweep(cfg);
      json summary{{"config", res.config}, {"total_failures", res.total_failures}};
      export_tables(sweep_table(res), summary, cfg.seed, res.config, cfg.out_dir, "sweep");
      std::printf("%zu cells -> %s/sweep.csv (%d failures)\n", res.cells.size(),
                  cfg.out_dir.c_str(), res.total_failures);
      return res.total_failures > 0 ? 3 : 0;
    }

    if (*levelsc) {
      const LevelsResult res = levels_study(cfg);
      json summary{{"config", res.config}, {"total_failures", res.total_failures}};
      export_tables(levels_table(res), summary, cfg.seed, res.config, cfg.out_dir,
                    "levels");
      std::printf("%zu cells -> %s/levels.csv (%d failures)\n", res.cells.size(),
                  cfg.out_dir.c_str(), res.total_failures);
      return res.total_failures > 0 ? 3 : 0;
    }

    if (*rstudyc) {
      const RStudyResult res = r_convergence_study(cfg, r_grid);
      json summary{{"config", res.config}};
      export_tables(rstudy_table(res), summary, cfg.seed, res.config, cfg.out_dir,
                    "rstudy");
      std::printf("%zu cells -> %s/rstudy.csv\n", res.cells.size(), cfg.out_dir.c_str());
      return 0;
    }

    if (*diagc) {
      const AlgoKind algo = algo_from_string(diag_algo);
      if (algo == AlgoKind::Ofab)
        throw std::invalid_argument("trajectory diagnostics need an optimized run");
      std::vector<Metric> metrics;
      for (const std::string& m : metric_names) metrics.push_back(metric_from_string(m));
      const int n = cfg.n_list.front();
      const double alpha = cfg.alphas.front();
      const Ensemble e = make_ensemble(n, alpha, diag_index + 1, cfg.seed);
      const Formula& f = e.instances[diag_index];
      OptimizerConfig opt = cfg.opt;
      opt.store_snapshots = true;
      const Algorithm a = algo == AlgoKind::Qaoa ? Algorithm::Qaoa : Algorithm::AbQaoa;
      const RunResult res =
          run(f, diag_p, a, cfg.init, opt,
              instance_run_seed(cfg.seed, algo, n, e.m, diag_index));
      const auto series = trajectory_diagnostics(f, res.best, etas, metrics);
      CsvTable t;
      t.header = {"instance_id", "algo", "p", "alpha", "eta", "k", "metric", "value"};
      for (const DiagnosticSeries& s : series)
        for (size_t k = 0; k < s.values.size(); ++k)
          t.rows.push_back({std::to_string(diag_index), diag_algo,
                            std::to_string(diag_p), format_double(alpha),
                            format_double(s.eta), std::to_string(k),
                            to_string(s.metric), format_double(s.values[k])});
      write_csv(cfg.out_dir + "/diag.csv", t);
      write_json(cfg.out_dir + "/manifest.json", make_manifest(cfg.seed, cfg_json));
      std::printf("%zu series -> %s/diag.csv\n", series.size(), cfg.out_dir.c_str());
      return 0;
    }

    if (*ofabc) {
      CsvTable t;
      t.header = {"instance_id", "n",          "alpha",      "m",
                  "level",       "best_energy", "ground",    "bias_if"};
      json traces = json::array();
      int failures = 0;
      for (int n : cfg.n_list)
        for (double alpha : cfg.alphas) {
          const Ensemble e = make_ensemble(n, alpha, cfg.instances, cfg.seed);
          for (int i = 0; i < cfg.instances; ++i) {
            const Formula& f = e.instances[i];
            const GroundSolution g = brute_force_ground(f);
            OfabConfig oc = cfg.ofab;
            oc.p = ofab_p;
            RngStream rng(derive_seed({instance_run_seed(cfg.seed, AlgoKind::Ofab, n,
                                                         e.m, i),
                                       static_cast<uint64_t>(ofab_p)}));
            try {
              const OfabResult r = opt_free_run(f, oc, rng);
              for (const OfabLevel& lv : r.levels) {
                const uint32_t mask = mask_from_assignment(
                    bias_state(lv.fields[lv.best_sample], oc.tie));
                const bool hit = std::find(g.ground_masks.begin(), g.ground_masks.end(),
                                           mask) != g.ground_masks.end();
                t.rows.push_back({std::to_string(i), std::to_string(n),
                                  format_double(alpha), std::to_string(e.m),
                                  std::to_string(lv.level),
                                  std::to_string(lv.best_energy), std::to_string(g.energy),
                                  hit ? "0" : "1"});
              }
              json trace = ofab_result_to_json(r);
              trace["instance_id"] = i;
              trace["n"] = n;
              trace["m"] = e.m;
              traces.push_back(std::move(trace));
            } catch (const std::exception&) {
              ++failures;
            }
          }
        }
      write_csv(cfg.out_dir + "/ofab.csv", t);
      write_json(cfg.out_dir + "/ofab_traces.json", traces);
      write_json(cfg.out_dir + "/manifest.json", make_manifest(cfg.seed, cfg_json));
      std::printf("%zu rows -> %s/ofab.csv (%d failures)\n", t.rows.size(),
                  cfg.out_dir.c_str(), failures);
      return failures > 0 ? 3 : 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
