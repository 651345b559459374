#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "abq/io.hpp"
#include "abq/ofab.hpp"
#include "abq/sat.hpp"
#include "abq/variational.hpp"

namespace abq {

enum class AlgoKind { Qaoa, AbQaoa, Ofab };

std::string to_string(AlgoKind a);
AlgoKind algo_from_string(const std::string& s);

// decision problems judge the SAT/UNSAT verdict; max problems judge IF <= 0.1
enum class ProblemKind { Decision, Max };

std::string to_string(ProblemKind k);
ProblemKind problem_from_string(const std::string& s);

struct ExperimentConfig {
  uint64_t seed = 0;  // mandatory at the CLI
  std::vector<int> n_list{10};
  std::vector<double> alphas{0.6};
  std::vector<int> levels{4};
  std::vector<AlgoKind> algorithms{AlgoKind::Qaoa, AlgoKind::AbQaoa};
  InitStrategy init = InitStrategy::Tqa;
  int instances = 20;  // N per cell
  OptimizerConfig opt;
  OfabConfig ofab;
  ProblemKind problem = ProblemKind::Decision;
  double e_th = 0.5;
  double if_threshold = 0.1;
  // runtime knobs, excluded from the config identity (and so from hashes)
  int threads = 1;
  std::string out_dir = "out";
};

void validate(const ExperimentConfig& cfg);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

// one batch per (n, alpha, seed), reused by every algorithm and level
Ensemble make_ensemble(int n, double alpha, int count, uint64_t seed);

uint64_t instance_run_seed(uint64_t seed, AlgoKind algo, int n, int m, int instance);

struct SweepCell {
  AlgoKind algo{};
  int n = 0;
  double alpha = 0.0;
  int m = 0;
  int p = 0;
  int instances = 0;
  int failures = 0;
  double p_sat = 0.0;
  double p_succ = 0.0;  // fraction of N; failed runs count as misses
  double de_mean = 0.0, de_stderr = 0.0;
  double if_mean = 0.0, if_stderr = 0.0;
  double ncon_mean = 0.0, ncon_stderr = 0.0;
  double cost_mean = 0.0;  // N_con * p^2 (layer count p(p+1)/2 for ofab)
};

struct SweepResult {
  std::vector<SweepCell> cells;
  nlohmann::json config;
  int total_failures = 0;
};

SweepResult sweep(const ExperimentConfig& cfg);
CsvTable sweep_table(const SweepResult& res);

inline constexpr int kLevelSaturation = 64;

std::vector<int> level_grid(AlgoKind algo);

// first grid level that solves the instance per cfg.problem; 64 when none does
int levels_to_solution(const Formula& f, AlgoKind algo, const ExperimentConfig& cfg,
                       uint64_t seed);

struct LevelsCell {
  AlgoKind algo{};
  int n = 0;
  double alpha = 0.0;
  int m = 0;
  int instances = 0;
  int failures = 0;
  int saturated = 0;  // instances recorded at 64
  double mean_level = 0.0;
  double stderr_level = 0.0;
};

struct LevelsResult {
  std::vector<LevelsCell> cells;
  nlohmann::json config;
  int total_failures = 0;
};

LevelsResult levels_study(const ExperimentConfig& cfg);
CsvTable levels_table(const LevelsResult& res);

struct RConvergence {
  AlgoKind algo{};
  int n = 0;
  double alpha = 0.0;
  int m = 0;
  int p = 0;
  std::vector<int> r_grid;
  std::vector<double> de_by_r;  // ensemble mean of the prefix-lowest residual energy
  std::vector<double> if_by_r;  // ensemble mean of the prefix-lowest infidelity
  int convergent_r_de = 0;
  bool de_converged = false;
  int convergent_r_if = 0;
  bool if_converged = false;
};

struct RStudyResult {
  std::vector<RConvergence> cells;
  nlohmann::json config;
};

// smallest grid point from which every further grid step changes the value
// by less than rel_tol (relatively); {last point, false} when none qualifies
std::pair<int, bool> convergent_r(const std::vector<int>& r_grid,
                                  const std::vector<double>& values,
                                  double rel_tol = 1e-2);

RStudyResult r_convergence_study(const ExperimentConfig& cfg,
                                 const std::vector<int>& r_grid);
CsvTable rstudy_table(const RStudyResult& res);

// <name>.csv + <name>_summary.json + manifest.json under out_dir
void export_tables(const CsvTable& table, const nlohmann::json& summary,
                   uint64_t seed, const nlohmann::json& config,
                   const std::string& out_dir, const std::string& name);

}  // namespace abq
