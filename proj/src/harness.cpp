#include "abq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "abq/diagnostics.hpp"

namespace abq {

using nlohmann::json;

namespace {

constexpr uint64_t kEnsembleTag = 0x656e73656d626c65ull;
constexpr uint64_t kRunTag = 0x72756e5f73656564ull;

constexpr double kRelChangeFloor = 1e-9;  // guards the x/0 case of exact convergence

int algo_id(AlgoKind a) { return static_cast<int>(a); }

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double stderr_of(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : xs) s += (x - mean) * (x - mean);
  const auto k = static_cast<double>(xs.size());
  return std::sqrt(s / (k - 1.0)) / std::sqrt(k);
}

void run_tasks(size_t total, int threads, const std::function<void(size_t)>& task) {
  threads = std::max(1, threads);
  if (threads == 1 || total <= 1) {
    for (size_t t = 0; t < total; ++t) task(t);
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    size_t t;
    while ((t = next.fetch_add(1)) < total) task(t);
  };
  std::vector<std::thread> pool;
  const int count = static_cast<int>(std::min<size_t>(threads, total));
  pool.reserve(count);
  for (int i = 0; i < count; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

std::string to_string(AlgoKind a) {
  switch (a) {
    case AlgoKind::Qaoa: return "qaoa";
    case AlgoKind::AbQaoa: return "ab_qaoa";
    case AlgoKind::Ofab: return "ofab";
  }
  throw std::invalid_argument("unknown algorithm");
}

AlgoKind algo_from_string(const std::string& s) {
  if (s == "qaoa") return AlgoKind::Qaoa;
  if (s == "ab_qaoa") return AlgoKind::AbQaoa;
  if (s == "ofab") return AlgoKind::Ofab;
  throw std::invalid_argument("unknown algorithm: " + s);
}

std::string to_string(ProblemKind k) {
  return k == ProblemKind::Decision ? "decision" : "max";
}

ProblemKind problem_from_string(const std::string& s) {
  if (s == "decision") return ProblemKind::Decision;
  if (s == "max") return ProblemKind::Max;
  throw std::invalid_argument("unknown problem kind: " + s);
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n_list.empty() || cfg.alphas.empty() || cfg.levels.empty() ||
      cfg.algorithms.empty())
    throw std::invalid_argument("all experiment grids must be non-empty");
  for (int n : cfg.n_list)
    if (n < 3 || n > kEngineMaxQubits)
      throw std::invalid_argument("variable count outside [3, 24]");
  for (double a : cfg.alphas)
    if (!(a > 0.0)) throw std::invalid_argument("clause density must be positive");
  for (int p : cfg.levels)
    if (p < 1) throw std::invalid_argument("level must be >= 1");
  if (cfg.instances < 1) throw std::invalid_argument("need at least one instance");
  if (cfg.opt.samples < 1 || cfg.ofab.samples < 1)
    throw std::invalid_argument("need at least one sample");
  if (cfg.threads < 1) throw std::invalid_argument("need at least one thread");
  if (!(cfg.e_th > 0.0) || !(cfg.if_threshold > 0.0))
    throw std::invalid_argument("thresholds must be positive");
}

json config_to_json(const ExperimentConfig& cfg) {
  json algos = json::array();
  for (AlgoKind a : cfg.algorithms) algos.push_back(to_string(a));
  return json{
      {"seed", cfg.seed},
      {"n", cfg.n_list},
      {"alpha", cfg.alphas},
      {"levels", cfg.levels},
      {"algorithms", algos},
      {"init", cfg.init == InitStrategy::Tqa ? "tqa" : "fourier"},
      {"instances", cfg.instances},
      {"problem", to_string(cfg.problem)},
      {"e_th", cfg.e_th},
      {"if_threshold", cfg.if_threshold},
      {"optimizer",
       {{"bias_learning_rate", cfg.opt.bias_learning_rate},
        {"adam",
         {{"step", cfg.opt.adam.step},
          {"beta1", cfg.opt.adam.beta1},
          {"beta2", cfg.opt.adam.beta2},
          {"epsilon", cfg.opt.adam.epsilon}}},
        {"fd_step", cfg.opt.fd_step},
        {"gradient",
         cfg.opt.gradient == GradientMethod::Adjoint ? "adjoint" : "central_difference"},
        {"convergence_tol", cfg.opt.convergence_tol},
        {"convergence_window", cfg.opt.convergence_window},
        {"max_iterations", cfg.opt.max_iterations},
        {"samples", cfg.opt.samples},
        {"delta_t", cfg.opt.delta_t},
        {"xi", cfg.opt.xi},
        {"fourier_levels", cfg.opt.fourier_levels}}},
      {"ofab",
       {{"p", cfg.ofab.p},
        {"samples", cfg.ofab.samples},
        {"delta_t", cfg.ofab.delta_t},
        {"bias_learning_rate", cfg.ofab.bias_learning_rate},
        {"tie", cfg.ofab.tie == TiePolicy::Zero ? "zero" : "one"}}},
  };
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("n")) cfg.n_list = j.at("n").get<std::vector<int>>();
  if (j.contains("alpha")) cfg.alphas = j.at("alpha").get<std::vector<double>>();
  if (j.contains("levels")) cfg.levels = j.at("levels").get<std::vector<int>>();
  if (j.contains("algorithms")) {
    cfg.algorithms.clear();
    for (const auto& a : j.at("algorithms"))
      cfg.algorithms.push_back(algo_from_string(a.get<std::string>()));
  }
  if (j.contains("init")) {
    const std::string init = j.at("init").get<std::string>();
    if (init == "tqa")
      cfg.init = InitStrategy::Tqa;
    else if (init == "fourier")
      cfg.init = InitStrategy::Fourier;
    else
      throw std::invalid_argument("unknown init strategy: " + init);
  }
  cfg.instances = j.value("instances", cfg.instances);
  if (j.contains("problem"))
    cfg.problem = problem_from_string(j.at("problem").get<std::string>());
  cfg.e_th = j.value("e_th", cfg.e_th);
  cfg.if_threshold = j.value("if_threshold", cfg.if_threshold);
  if (j.contains("optimizer")) {
    const json& o = j.at("optimizer");
    cfg.opt.bias_learning_rate = o.value("bias_learning_rate", cfg.opt.bias_learning_rate);
    if (o.contains("adam")) {
      const json& a = o.at("adam");
      cfg.opt.adam.step = a.value("step", cfg.opt.adam.step);
      cfg.opt.adam.beta1 = a.value("beta1", cfg.opt.adam.beta1);
      cfg.opt.adam.beta2 = a.value("beta2", cfg.opt.adam.beta2);
      cfg.opt.adam.epsilon = a.value("epsilon", cfg.opt.adam.epsilon);
    }
    cfg.opt.fd_step = o.value("fd_step", cfg.opt.fd_step);
    if (o.contains("gradient")) {
      const std::string g = o.at("gradient").get<std::string>();
      if (g == "adjoint")
        cfg.opt.gradient = GradientMethod::Adjoint;
      else if (g == "central_difference")
        cfg.opt.gradient = GradientMethod::CentralDifference;
      else
        throw std::invalid_argument("unknown gradient method: " + g);
    }
    cfg.opt.convergence_tol = o.value("convergence_tol", cfg.opt.convergence_tol);
    cfg.opt.convergence_window = o.value("convergence_window", cfg.opt.convergence_window);
    cfg.opt.max_iterations = o.value("max_iterations", cfg.opt.max_iterations);
    cfg.opt.samples = o.value("samples", cfg.opt.samples);
    cfg.opt.delta_t = o.value("delta_t", cfg.opt.delta_t);
    cfg.opt.xi = o.value("xi", cfg.opt.xi);
    if (o.contains("fourier_levels"))
      cfg.opt.fourier_levels = o.at("fourier_levels").get<std::vector<int>>();
  }
  if (j.contains("ofab")) {
    const json& o = j.at("ofab");
    cfg.ofab.p = o.value("p", cfg.ofab.p);
    cfg.ofab.samples = o.value("samples", cfg.ofab.samples);
    cfg.ofab.delta_t = o.value("delta_t", cfg.ofab.delta_t);
    cfg.ofab.bias_learning_rate =
        o.value("bias_learning_rate", cfg.ofab.bias_learning_rate);
    if (o.contains("tie")) {
      const std::string tie = o.at("tie").get<std::string>();
      if (tie == "zero")
        cfg.ofab.tie = TiePolicy::Zero;
      else if (tie == "one")
        cfg.ofab.tie = TiePolicy::One;
      else
        throw std::invalid_argument("unknown tie policy: " + tie);
    }
  }
  return cfg;
}

Ensemble make_ensemble(int n, double alpha, int count, uint64_t seed) {
  if (count < 1) throw std::invalid_argument("need at least one instance");
  Ensemble e;
  e.n = n;
  e.alpha = alpha;
  e.m = clause_count_for_density(n, alpha);
  e.seed = seed;
  e.instances.reserve(count);
  for (int i = 0; i < count; ++i) {
    RngStream rng(derive_seed({seed, kEnsembleTag, static_cast<uint64_t>(n),
                               static_cast<uint64_t>(e.m), static_cast<uint64_t>(i)}));
    e.instances.push_back(generate_instance_m(n, e.m, rng));
  }
  return e;
}

uint64_t instance_run_seed(uint64_t seed, AlgoKind algo, int n, int m, int instance) {
  return derive_seed({seed, kRunTag, static_cast<uint64_t>(algo_id(algo)),
                      static_cast<uint64_t>(n), static_cast<uint64_t>(m),
                      static_cast<uint64_t>(instance)});
}

namespace {

struct RunOutcome {
  bool failed = false;
  bool sat_truth = false;
  bool correct = false;
  double delta_e = 0.0;
  double infid = 0.0;
  double ncon = 0.0;
  double cost = 0.0;
};

}  // namespace

SweepResult sweep(const ExperimentConfig& cfg) {
  validate(cfg);

  struct EnsembleSlot {
    Ensemble ensemble;
    std::vector<GroundSolution> grounds;
  };
  std::vector<EnsembleSlot> slots;
  slots.reserve(cfg.n_list.size() * cfg.alphas.size());
  for (int n : cfg.n_list)
    for (double alpha : cfg.alphas) {
      EnsembleSlot slot;
      slot.ensemble = make_ensemble(n, alpha, cfg.instances, cfg.seed);
      slot.grounds.reserve(cfg.instances);
      for (const Formula& f : slot.ensemble.instances)
        slot.grounds.push_back(brute_force_ground(f));
      slots.push_back(std::move(slot));
    }

  struct CellPlan {
    AlgoKind algo;
    size_t slot;
    int p;
  };
  std::vector<CellPlan> plan;
  for (AlgoKind algo : cfg.algorithms)
    for (size_t s = 0; s < slots.size(); ++s)
      for (int p : cfg.levels) plan.push_back({algo, s, p});

  OptimizerConfig opt = cfg.opt;
  opt.store_snapshots = false;  // traces are not exported by the sweep

  const size_t total = plan.size() * static_cast<size_t>(cfg.instances);
  std::vector<RunOutcome> outcomes(total);
  run_tasks(total, cfg.threads, [&](size_t t) {
    const CellPlan& cell = plan[t / cfg.instances];
    const int inst = static_cast<int>(t % cfg.instances);
    const EnsembleSlot& slot = slots[cell.slot];
    const Formula& f = slot.ensemble.instances[inst];
    const GroundSolution& g = slot.grounds[inst];
    RunOutcome o;
    o.sat_truth = sat_oracle(g);
    const uint64_t rs =
        instance_run_seed(cfg.seed, cell.algo, f.n, slot.ensemble.m, inst);
    try {
      if (cell.algo == AlgoKind::Ofab) {
        OfabConfig oc = cfg.ofab;
        oc.p = cell.p;
        RngStream rng(derive_seed({rs, static_cast<uint64_t>(cell.p)}));
        const OfabResult r = opt_free_run(f, oc, rng);
        o.delta_e = static_cast<double>(r.energy - g.energy);
        const uint32_t mask = mask_from_assignment(r.assignment);
        o.infid = std::find(g.ground_masks.begin(), g.ground_masks.end(), mask) ==
                          g.ground_masks.end()
                      ? 1.0
                      : 0.0;
        o.correct = (decide_sat(static_cast<double>(r.energy), cfg.e_th) ==
                     Verdict::Sat) == o.sat_truth;
        o.ncon = 0.0;
        o.cost = static_cast<double>(r.layers_per_sample);
      } else {
        const Algorithm a =
            cell.algo == AlgoKind::Qaoa ? Algorithm::Qaoa : Algorithm::AbQaoa;
        const RunResult r = run(build_cost_diagonal(f), cell.p, a, cfg.init, opt, rs);
        o.delta_e = r.best.best_energy - static_cast<double>(g.energy);
        o.infid = infidelity(r.best.final_state, g.ground_masks);
        o.correct =
            (decide_sat(r.best.best_energy, cfg.e_th) == Verdict::Sat) == o.sat_truth;
        o.ncon = static_cast<double>(r.best.n_con);
        o.cost = o.ncon * cell.p * cell.p;
      }
    } catch (const std::exception&) {
      o.failed = true;
    }
    outcomes[t] = o;
  });

  SweepResult res;
  res.config = config_to_json(cfg);
  for (size_t ci = 0; ci < plan.size(); ++ci) {
    const CellPlan& cell = plan[ci];
    const EnsembleSlot& slot = slots[cell.slot];
    SweepCell agg;
    agg.algo = cell.algo;
    agg.n = slot.ensemble.n;
    agg.alpha = slot.ensemble.alpha;
    agg.m = slot.ensemble.m;
    agg.p = cell.p;
    agg.instances = cfg.instances;
    int sat = 0, hits = 0;
    std::vector<double> de, ifs, ncons, costs;
    for (int i = 0; i < cfg.instances; ++i) {
      const RunOutcome& o = outcomes[ci * cfg.instances + i];
      sat += o.sat_truth ? 1 : 0;
      if (o.failed) {
        ++agg.failures;
        continue;
      }
      hits += o.correct ? 1 : 0;
      de.push_back(o.delta_e);
      ifs.push_back(o.infid);
      ncons.push_back(o.ncon);
      costs.push_back(o.cost);
    }
    agg.p_sat = static_cast<double>(sat) / cfg.instances;
    agg.p_succ = static_cast<double>(hits) / cfg.instances;
    agg.de_mean = mean_of(de);
    agg.de_stderr = stderr_of(de, agg.de_mean);
    agg.if_mean = mean_of(ifs);
    agg.if_stderr = stderr_of(ifs, agg.if_mean);
    agg.ncon_mean = mean_of(ncons);
    agg.ncon_stderr = stderr_of(ncons, agg.ncon_mean);
    agg.cost_mean = mean_of(costs);
    res.total_failures += agg.failures;
    res.cells.push_back(agg);
  }
  return res;
}

CsvTable sweep_table(const SweepResult& res) {
  CsvTable t;
  t.header = {"algo",      "n",         "alpha",   "m",         "p",
              "instances", "failures",  "p_sat",   "p_succ",    "de_mean",
              "de_stderr", "if_mean",   "if_stderr", "ncon_mean", "ncon_stderr",
              "cost_mean"};
  for (const SweepCell& c : res.cells)
    t.rows.push_back({to_string(c.algo), std::to_string(c.n), format_double(c.alpha),
                      std::to_string(c.m), std::to_string(c.p),
                      std::to_string(c.instances), std::to_string(c.failures),
                      format_double(c.p_sat), format_double(c.p_succ),
                      format_double(c.de_mean), format_double(c.de_stderr),
                      format_double(c.if_mean), format_double(c.if_stderr),
                      format_double(c.ncon_mean), format_double(c.ncon_stderr),
                      format_double(c.cost_mean)});
  return t;
}

std::vector<int> level_grid(AlgoKind algo) {
  std::vector<int> grid{1, 2, 3, 4, 5, 6, 7, 8};
  if (algo == AlgoKind::Qaoa)
    for (int p = 16; p <= 64; p += 8) grid.push_back(p);
  else if (algo == AlgoKind::AbQaoa) {
    grid.push_back(16);
    grid.push_back(24);
  } else {
    throw std::invalid_argument("levels protocol covers qaoa and ab_qaoa");
  }
  return grid;
}

int levels_to_solution(const Formula& f, AlgoKind algo, const ExperimentConfig& cfg,
                       uint64_t seed) {
  const GroundSolution g = brute_force_ground(f);
  const bool truth = sat_oracle(g);
  const CostDiagonal c = build_cost_diagonal(f);
  const Algorithm a = algo == AlgoKind::Qaoa ? Algorithm::Qaoa : Algorithm::AbQaoa;
  OptimizerConfig opt = cfg.opt;
  opt.store_snapshots = false;
  for (int p : level_grid(algo)) {
    const RunResult r = run(c, p, a, cfg.init, opt, seed);
    const bool solved =
        cfg.problem == ProblemKind::Decision
            ? (decide_sat(r.best.best_energy, cfg.e_th) == Verdict::Sat) == truth
            : infidelity(r.best.final_state, g.ground_masks) <= cfg.if_threshold;
    if (solved) return p;
  }
  return kLevelSaturation;
}

LevelsResult levels_study(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<AlgoKind> algos;
  for (AlgoKind a : cfg.algorithms)
    if (a != AlgoKind::Ofab) algos.push_back(a);
  if (algos.empty())
    throw std::invalid_argument("levels study needs qaoa or ab_qaoa");

  struct Slot {
    Ensemble ensemble;
  };
  std::vector<Slot> slots;
  for (int n : cfg.n_list)
    for (double alpha : cfg.alphas)
      slots.push_back({make_ensemble(n, alpha, cfg.instances, cfg.seed)});

  struct CellPlan {
    AlgoKind algo;
    size_t slot;
  };
  std::vector<CellPlan> plan;
  for (AlgoKind algo : algos)
    for (size_t s = 0; s < slots.size(); ++s) plan.push_back({algo, s});

  const size_t total = plan.size() * static_cast<size_t>(cfg.instances);
  std::vector<int> levels(total, -1);  // -1 marks a failed instance
  run_tasks(total, cfg.threads, [&](size_t t) {
    const CellPlan& cell = plan[t / cfg.instances];
    const int inst = static_cast<int>(t % cfg.instances);
    const Ensemble& e = slots[cell.slot].ensemble;
    try {
      levels[t] = levels_to_solution(
          e.instances[inst], cell.algo, cfg,
          instance_run_seed(cfg.seed, cell.algo, e.n, e.m, inst));
    } catch (const std::exception&) {
    }
  });

  LevelsResult res;
  res.config = config_to_json(cfg);
  for (size_t ci = 0; ci < plan.size(); ++ci) {
    const Ensemble& e = slots[plan[ci].slot].ensemble;
    LevelsCell agg;
    agg.algo = plan[ci].algo;
    agg.n = e.n;
    agg.alpha = e.alpha;
    agg.m = e.m;
    agg.instances = cfg.instances;
    std::vector<double> vals;
    for (int i = 0; i < cfg.instances; ++i) {
      const int lv = levels[ci * cfg.instances + i];
      if (lv < 0) {
        ++agg.failures;
        continue;
      }
      if (lv == kLevelSaturation) ++agg.saturated;
      vals.push_back(static_cast<double>(lv));
    }
    agg.mean_level = mean_of(vals);
    agg.stderr_level = stderr_of(vals, agg.mean_level);
    res.total_failures += agg.failures;
    res.cells.push_back(agg);
  }
  return res;
}

CsvTable levels_table(const LevelsResult& res) {
  CsvTable t;
  t.header = {"algo",     "n",         "alpha",      "m",         "instances",
              "failures", "saturated", "mean_level", "stderr_level"};
  for (const LevelsCell& c : res.cells)
    t.rows.push_back({to_string(c.algo), std::to_string(c.n), format_double(c.alpha),
                      std::to_string(c.m), std::to_string(c.instances),
                      std::to_string(c.failures), std::to_string(c.saturated),
                      format_double(c.mean_level), format_double(c.stderr_level)});
  return t;
}

std::pair<int, bool> convergent_r(const std::vector<int>& r_grid,
                                  const std::vector<double>& values, double rel_tol) {
  if (r_grid.size() != values.size() || r_grid.empty())
    throw std::invalid_argument("grid/value length mismatch");
  for (size_t i = 0; i + 1 < r_grid.size(); ++i)
    if (r_grid[i + 1] <= r_grid[i])
      throw std::invalid_argument("R grid must be strictly increasing");
  for (size_t i = 0; i + 1 < values.size(); ++i) {
    bool ok = true;
    for (size_t j = i; j + 1 < values.size(); ++j) {
      const double rel = std::abs(values[j + 1] - values[j]) /
                         std::max(std::abs(values[j]), kRelChangeFloor);
      if (rel >= rel_tol) {
        ok = false;
        break;
      }
    }
    if (ok) return {r_grid[i], true};
  }
  return {r_grid.back(), false};
}

RStudyResult r_convergence_study(const ExperimentConfig& cfg,
                                 const std::vector<int>& r_grid) {
  validate(cfg);
  if (r_grid.empty()) throw std::invalid_argument("empty R grid");
  for (size_t i = 0; i + 1 < r_grid.size(); ++i)
    if (r_grid[i + 1] <= r_grid[i])
      throw std::invalid_argument("R grid must be strictly increasing");
  if (r_grid.front() < 1) throw std::invalid_argument("R must be >= 1");
  const int r_max = r_grid.back();

  std::vector<AlgoKind> algos;
  for (AlgoKind a : cfg.algorithms)
    if (a != AlgoKind::Ofab) algos.push_back(a);
  if (algos.empty()) throw std::invalid_argument("R study needs qaoa or ab_qaoa");

  struct Slot {
    Ensemble ensemble;
    std::vector<GroundSolution> grounds;
  };
  std::vector<Slot> slots;
  for (int n : cfg.n_list)
    for (double alpha : cfg.alphas) {
      Slot slot{make_ensemble(n, alpha, cfg.instances, cfg.seed), {}};
      for (const Formula& f : slot.ensemble.instances)
        slot.grounds.push_back(brute_force_ground(f));
      slots.push_back(std::move(slot));
    }

  struct CellPlan {
    AlgoKind algo;
    size_t slot;
    int p;
  };
  std::vector<CellPlan> plan;
  for (AlgoKind algo : algos)
    for (size_t s = 0; s < slots.size(); ++s)
      for (int p : cfg.levels) plan.push_back({algo, s, p});

  // per (cell, instance): the prefix-lowest dE and IF at every grid point
  struct InstanceCurve {
    bool failed = false;
    std::vector<double> de, inf;
  };
  const size_t total = plan.size() * static_cast<size_t>(cfg.instances);
  std::vector<InstanceCurve> curves(total);
  OptimizerConfig base = cfg.opt;
  base.store_snapshots = false;

  run_tasks(total, cfg.threads, [&](size_t t) {
    const CellPlan& cell = plan[t / cfg.instances];
    const int inst = static_cast<int>(t % cfg.instances);
    const Slot& slot = slots[cell.slot];
    const Formula& f = slot.ensemble.instances[inst];
    const GroundSolution& g = slot.grounds[inst];
    InstanceCurve curve;
    try {
      const CostDiagonal c = build_cost_diagonal(f);
      const uint64_t rs =
          instance_run_seed(cfg.seed, cell.algo, f.n, slot.ensemble.m, inst);
      OptimizerConfig opt = base;
      if (cell.algo == AlgoKind::Qaoa) {
        opt.bias_learning_rate = 0.0;
        opt.zero_bias_init = true;
      }
      if (cfg.init == InitStrategy::Tqa) {
        // one optimization per sample; grid prefixes share the work
        RngStream rng(derive_seed({rs, static_cast<uint64_t>(cell.p)}));
        std::vector<InitPoint> points =
            tqa_init(cell.p, r_max, opt.delta_t, opt.xi, f.n, rng);
        if (opt.zero_bias_init)
          for (InitPoint& pt : points) std::fill(pt.h.begin(), pt.h.end(), 0.0);
        double best_de = std::numeric_limits<double>::infinity();
        double best_if = std::numeric_limits<double>::infinity();
        std::vector<double> de_prefix, if_prefix;
        for (const InitPoint& pt : points) {
          const RunRecord rec = optimize_sample(c, pt, opt);
          best_de = std::min(best_de, rec.best_energy - static_cast<double>(g.energy));
          best_if = std::min(best_if, infidelity(rec.final_state, g.ground_masks));
          de_prefix.push_back(best_de);
          if_prefix.push_back(best_if);
        }
        for (int r : r_grid) {
          curve.de.push_back(de_prefix[r - 1]);
          curve.inf.push_back(if_prefix[r - 1]);
        }
      } else {
        const Algorithm a =
            cell.algo == AlgoKind::Qaoa ? Algorithm::Qaoa : Algorithm::AbQaoa;
        for (int r : r_grid) {
          OptimizerConfig opt_r = opt;
          opt_r.samples = r;
          const RunResult rr = run(c, cell.p, a, cfg.init, opt_r, rs);
          curve.de.push_back(rr.best.best_energy - static_cast<double>(g.energy));
          curve.inf.push_back(infidelity(rr.best.final_state, g.ground_masks));
        }
      }
    } catch (const std::exception&) {
      curve.failed = true;
    }
    curves[t] = curve;
  });

  RStudyResult res;
  res.config = config_to_json(cfg);
  for (size_t ci = 0; ci < plan.size(); ++ci) {
    const Slot& slot = slots[plan[ci].slot];
    RConvergence cell;
    cell.algo = plan[ci].algo;
    cell.n = slot.ensemble.n;
    cell.alpha = slot.ensemble.alpha;
    cell.m = slot.ensemble.m;
    cell.p = plan[ci].p;
    cell.r_grid = r_grid;
    for (size_t gi = 0; gi < r_grid.size(); ++gi) {
      std::vector<double> de, inf;
      for (int i = 0; i < cfg.instances; ++i) {
        const InstanceCurve& curve = curves[ci * cfg.instances + i];
        if (curve.failed) continue;
        de.push_back(curve.de[gi]);
        inf.push_back(curve.inf[gi]);
      }
      cell.de_by_r.push_back(mean_of(de));
      cell.if_by_r.push_back(mean_of(inf));
    }
    std::tie(cell.convergent_r_de, cell.de_converged) = convergent_r(r_grid, cell.de_by_r);
    std::tie(cell.convergent_r_if, cell.if_converged) = convergent_r(r_grid, cell.if_by_r);
    res.cells.push_back(cell);
  }
  return res;
}

CsvTable rstudy_table(const RStudyResult& res) {
  CsvTable t;
  t.header = {"algo", "n",  "alpha",        "m",           "p",
              "r",    "de", "if",           "r_conv_de",   "de_converged",
              "r_conv_if", "if_converged"};
  for (const RConvergence& c : res.cells)
    for (size_t gi = 0; gi < c.r_grid.size(); ++gi)
      t.rows.push_back({to_string(c.algo), std::to_string(c.n), format_double(c.alpha),
                        std::to_string(c.m), std::to_string(c.p),
                        std::to_string(c.r_grid[gi]), format_double(c.de_by_r[gi]),
                        format_double(c.if_by_r[gi]), std::to_string(c.convergent_r_de),
                        c.de_converged ? "1" : "0", std::to_string(c.convergent_r_if),
                        c.if_converged ? "1" : "0"});
  return t;
}

void export_tables(const CsvTable& table, const json& summary, uint64_t seed,
                   const json& config, const std::string& out_dir,
                   const std::string& name) {
  std::filesystem::create_directories(out_dir);
  write_csv(out_dir + "/" + name + ".csv", table);
  write_json(out_dir + "/" + name + "_summary.json", summary);
  write_json(out_dir + "/manifest.json", make_manifest(seed, config));
}

}  // namespace abq
