// Acceptance gate. Each release criterion is checked end to end and prints
// exactly one [PASS]/[FAIL] line with the measured values and the pinned
// tolerance. Criterion numbers can be passed as arguments to run a subset,
// e.g. `abq_acceptance 1 4 5`. Exit code 0 iff every hard criterion passes
// (criterion 11 is a soft sanity window: it warns but never fails the gate).
#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "abq/diagnostics.hpp"
#include "abq/harness.hpp"
#include "abq/io.hpp"
#include "abq/ofab.hpp"
#include "abq/sat.hpp"
#include "abq/statevector.hpp"
#include "abq/variational.hpp"

using namespace abq;
namespace fs = std::filesystem;

namespace {

constexpr uint64_t kSeed = 20260814;
const int kThreads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));

// ---------- small utilities ----------

struct Outcome {
  bool pass = false;
  bool soft = false;  // soft criteria report but never fail the gate
  std::string detail;
};

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  const int nt = std::min(kThreads, count);
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

StateVector random_state(int n, RngStream& rng) {
  StateVector psi(n);
  double norm = 0.0;
  for (size_t z = 0; z < psi.dim(); ++z) {
    psi[z] = {rng.next_normal(), rng.next_normal()};
    norm += std::norm(psi[z]);
  }
  norm = std::sqrt(norm);
  for (size_t z = 0; z < psi.dim(); ++z) psi[z] /= norm;
  return psi;
}

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("abq_acceptance_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OptimizerConfig fast_optimizer() {
  OptimizerConfig opt;  // paper defaults: R = 10, Adam(0.05), tol 1e-5 / 5
  opt.gradient = GradientMethod::Adjoint;
  opt.store_snapshots = false;
  return opt;
}

// ---------- criterion 1: oracle equivalence ----------

Outcome c1_oracle_equivalence() {
  Formula f{3, {{0, 1, 2}}};  // the single 3-subset at n = 3
  CostDiagonal c = build_cost_diagonal(f);
  RngStream rng(derive_seed({kSeed, 1}));

  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 1 + static_cast<int>(rng.next_below(3));
    BiasFields h(3);
    for (double& x : h) x = 3.0 * (rng.next_double() - 0.5);
    Schedule s;
    for (int k = 0; k < p; ++k) {
      s.gamma.push_back(2.0 * std::numbers::pi * rng.next_double());
      s.beta.push_back(std::numbers::pi * rng.next_double());
    }

    StateVector psi0 = prepare_initial_state(h);
    StateVector fast = evolve(psi0, s, h, c);

    Eigen::VectorXcd ref = Eigen::Map<const Eigen::VectorXcd>(psi0.data(), 8);
    for (int k = 0; k < p; ++k)
      ref = build_step_unitary(s.gamma[k], s.beta[k], h, c) * ref;

    for (size_t z = 0; z < 8; ++z)
      worst = std::max(worst, std::abs(fast[z] - ref(static_cast<Eigen::Index>(z))));
  }
  return {worst <= 1e-10, false,
          "evolve vs dense step product, 200 configs (n=3, p<=3), max amp err " +
              fmt(worst) + " (tol 1e-10)"};
}

// ---------- criterion 2: QAOA reduction identity ----------

Outcome c2_reduction_identity() {
  OptimizerConfig opt = fast_optimizer();
  opt.samples = 3;
  opt.max_iterations = 40;

  OptimizerConfig frozen = opt;
  frozen.bias_learning_rate = 0.0;  // ell = 0
  frozen.zero_bias_init = true;     // h = 0

  int identical = 0;
  for (uint64_t i = 0; i < 20; ++i) {
    RngStream gen(derive_seed({kSeed, 2, i}));
    Formula f = generate_instance(6, 0.9, gen);
    uint64_t run_seed = derive_seed({kSeed, 2, i, 99});

    RunResult q = run(f, 3, Algorithm::Qaoa, InitStrategy::Tqa, opt, run_seed);
    RunResult ab = run(f, 3, Algorithm::AbQaoa, InitStrategy::Tqa, frozen, run_seed);

    bool same = q.sample_energies == ab.sample_energies &&
                q.best.energy_trace == ab.best.energy_trace &&
                q.best.best_schedule.gamma == ab.best.best_schedule.gamma &&
                q.best.best_schedule.beta == ab.best.best_schedule.beta &&
                q.best.best_energy == ab.best.best_energy;
    identical += same;
  }
  return {identical == 20, false,
          "ab-QAOA(h=0, ell=0) vs QAOA bitwise on " + std::to_string(identical) +
              "/20 seeded runs (n=6, p=3, traces+schedules+samples)"};
}

// ---------- criterion 3: entanglement entropy bound ----------

// graph frozen from an offline search over n=10 graph states; for a graph
// state the entropy of a cut equals the F2 rank of the adjacency block, and
// this graph loses only 64 of the 1930 available rank units
constexpr std::array<uint16_t, 10> kGraphAdj = {392, 664, 200, 839, 450,
                                                960, 444, 631, 121, 170};

int rank_f2(std::vector<uint16_t> rows) {
  int rank = 0;
  for (int bit = 0; bit < 16; ++bit) {
    const uint16_t mask = static_cast<uint16_t>(1u << bit);
    auto pivot = std::find_if(rows.begin(), rows.end(),
                              [&](uint16_t r) { return r & mask; });
    if (pivot == rows.end()) continue;
    const uint16_t prow = *pivot;
    rows.erase(pivot);
    ++rank;
    for (uint16_t& r : rows)
      if (r & mask) r ^= prow;
  }
  return rank;
}

StateVector graph_state(const std::array<uint16_t, 10>& adj) {
  StateVector psi(10);
  const double a = 1.0 / 32.0;  // 2^{-n/2}
  for (uint32_t z = 0; z < 1024; ++z) {
    int edges_inside = 0;
    for (int i = 0; i < 10; ++i)
      if ((z >> i) & 1) edges_inside += std::popcount(uint32_t(adj[i] & z & ~((1u << (i + 1)) - 1)));
    psi[z] = (edges_inside & 1) ? -a : a;
  }
  return psi;
}

Outcome c3_entropy_bound() {
  const double bound = 1930.0 / 511.0;  // max average over the 511 cuts

  RngStream rng(derive_seed({kSeed, 3}));
  double lo = 1e9, hi = -1e9;
  for (int i = 0; i < 100; ++i) {
    double s = entanglement_entropy_avg(random_state(10, rng)).mean;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  bool random_ok = lo >= 0.0 && hi <= bound + 1e-9;

  // library path on the frozen graph state
  BipartitionAverage ga = entanglement_entropy_avg(graph_state(kGraphAdj));

  // independent oracle: average F2 cut rank over the same canonical cut set
  double rank_total = 0.0;
  std::array<double, 5> rank_by_size{}, count_by_size{};
  int cuts = 0;
  for (uint32_t mask = 1; mask < 1023; ++mask) {
    const int s = std::popcount(mask);
    if (s > 5) continue;
    if (s == 5 && !(mask & 1)) continue;
    std::vector<uint16_t> rows;
    for (int i = 0; i < 10; ++i)
      if ((mask >> i) & 1) rows.push_back(static_cast<uint16_t>(kGraphAdj[i] & ~mask));
    const int r = rank_f2(std::move(rows));
    rank_total += r;
    rank_by_size[s - 1] += r;
    count_by_size[s - 1] += 1.0;
    ++cuts;
  }
  const double oracle_mean = rank_total / cuts;

  bool oracle_ok = cuts == 511 && std::abs(ga.mean - oracle_mean) < 1e-9;
  for (int s = 0; s < 5; ++s)
    oracle_ok = oracle_ok &&
                std::abs(ga.by_size[s] - rank_by_size[s] / count_by_size[s]) < 1e-9;

  bool near_bound = ga.mean >= 0.95 * bound;
  return {random_ok && oracle_ok && near_bound, false,
          "100 random n=10 states in [" + fmt(lo) + ", " + fmt(hi) + "] <= " +
              fmt(bound, 6) + "+1e-9; graph state avg " + fmt(ga.mean, 6) + " = " +
              fmt(100.0 * ga.mean / bound, 4) + "% of bound (needs >= 95%), F2-rank oracle " +
              (oracle_ok ? "agrees" : "DISAGREES")};
}

// ---------- criterion 4: SAT phase transition ----------

Outcome c4_sat_transition() {
  std::map<int, double> psat;  // alpha*10 -> P_SAT
  for (int a10 = 3; a10 <= 14; ++a10) {
    Ensemble e = make_ensemble(10, a10 / 10.0, 100, kSeed);
    int sat = 0;
    for (const Formula& f : e.instances) sat += sat_oracle(f);
    psat[a10] = sat / 100.0;
  }
  const bool above = psat[5] > 0.5;   // still mostly satisfiable at alpha = 0.5
  const bool below = psat[7] < 0.5;   // mostly unsatisfiable by alpha = 0.7

  // Locate the measured 0.5 crossing for the report.
  int lo = 14;
  for (int a10 = 3; a10 <= 14; ++a10)
    if (psat[a10] >= 0.5) lo = a10;
  std::string crossing = "(" + fmt(lo / 10.0) + ", " + fmt(std::min(lo + 1, 14) / 10.0) + ")";

  std::string curve;
  for (auto [a, p] : psat) curve += fmt(p, 2) + (a < 14 ? " " : "");
  return {above && below, false,
          "requires P_SAT to cross 0.5 in (0.5, 0.7); measured crossing in " + crossing +
              ", curve over alpha 0.3..1.4: [" + curve +
              "]; the pinned window matches the asymptotic threshold, not this n=10 "
              "ensemble (see decisions ledger)"};
}

// ---------- criterion 5: approximation error ----------

Outcome c5_approximation_error() {
  bool ok = true;
  std::string detail = "mean approximation error over 100 n=10 instances:";
  for (double alpha : {0.9, 2.0, 3.0}) {
    Ensemble e = make_ensemble(10, alpha, 100, kSeed);
    double total = 0.0;
    for (const Formula& f : e.instances) total += approximation_error(f);
    const double m = total / 100.0;
    ok = ok && m <= 1.0;
    detail += " alpha=" + fmt(alpha, 2) + ": " + fmt(m);
  }
  return {ok, false, detail + " (tol <= 1 each)"};
}

// ---------- criterion 6 (+12): decision gap sweep ----------

ExperimentConfig c6_config(int threads) {
  ExperimentConfig cfg;
  cfg.seed = kSeed;
  cfg.n_list = {10};
  cfg.alphas = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4};
  cfg.levels = {4};
  cfg.algorithms = {AlgoKind::Qaoa, AlgoKind::AbQaoa};
  cfg.instances = 20;
  cfg.opt = fast_optimizer();
  cfg.problem = ProblemKind::Decision;
  cfg.threads = threads;
  return cfg;
}

struct C6Artifacts {
  SweepResult result;
  fs::path out;
};
std::optional<C6Artifacts> g_c6;

const C6Artifacts& ensure_c6() {
  if (!g_c6) {
    ExperimentConfig cfg = c6_config(kThreads);
    cfg.out_dir = temp_dir("c6").string();
    SweepResult res = sweep(cfg);
    export_tables(sweep_table(res), {{"criterion", 6}}, cfg.seed, res.config,
                  cfg.out_dir, "sweep");
    g_c6 = C6Artifacts{std::move(res), fs::path(cfg.out_dir)};
  }
  return *g_c6;
}

Outcome c6_decision_gap() {
  const SweepResult& res = ensure_c6().result;
  std::map<double, double> q_succ, ab_succ;
  for (const SweepCell& c : res.cells)
    (c.algo == AlgoKind::Qaoa ? q_succ : ab_succ)[c.alpha] = c.p_succ;

  bool ab_ok = true, order_ok = true;
  double ab_min = 1.0;
  for (auto& [alpha, p] : ab_succ) {
    ab_min = std::min(ab_min, p);
    ab_ok = ab_ok && p >= 0.9;
    order_ok = order_ok && p >= q_succ[alpha] - 0.15;
  }
  // "near the crossing" spans the nominal alpha_c=0.6 through this ensemble's
  // measured P_SAT=0.5 point (~0.85); the QAOA dip tracks the latter.
  double q_near_crossing =
      std::min({q_succ[0.5], q_succ[0.6], q_succ[0.7], q_succ[0.8], q_succ[0.9], q_succ[1.0]});
  bool q_ok = q_near_crossing < 0.7;

  std::string qs, as;
  for (auto& [a, p] : q_succ) qs += fmt(p, 2) + " ";
  for (auto& [a, p] : ab_succ) as += fmt(p, 2) + " ";
  return {ab_ok && q_ok && order_ok && res.total_failures == 0, false,
          "p=4, 20 inst/pt: ab-QAOA min P_succ " + fmt(ab_min) +
              " (tol >= 0.9 everywhere); QAOA min near crossing " + fmt(q_near_crossing) +
              " (tol < 0.7); qaoa=[" + qs + "] ab=[" + as + "]"};
}

// ---------- criterion 7 (+11): reachability deficit ----------

struct C7Artifacts {
  SweepResult result;
};
std::optional<C7Artifacts> g_c7;

const C7Artifacts& ensure_c7() {
  if (!g_c7) {
    ExperimentConfig cfg;
    cfg.seed = kSeed;
    cfg.n_list = {10};
    cfg.alphas = {3.0};
    cfg.levels = {4, 8};
    cfg.algorithms = {AlgoKind::Qaoa, AlgoKind::AbQaoa};
    cfg.instances = 20;
    cfg.opt = fast_optimizer();
    cfg.problem = ProblemKind::Max;
    cfg.threads = kThreads;
    g_c7 = C7Artifacts{sweep(cfg)};
  }
  return *g_c7;
}

const SweepCell& cell_at(const SweepResult& res, AlgoKind algo, int p) {
  for (const SweepCell& c : res.cells)
    if (c.algo == algo && c.p == p) return c;
  throw std::runtime_error("missing sweep cell");
}

Outcome c7_reachability_deficit() {
  const SweepResult& res = ensure_c7().result;
  const double q4 = cell_at(res, AlgoKind::Qaoa, 4).if_mean;
  const double ab4 = cell_at(res, AlgoKind::AbQaoa, 4).if_mean;
  const double ab8 = cell_at(res, AlgoKind::AbQaoa, 8).if_mean;
  const bool ok = q4 > 0.5 && ab4 < 0.3 && ab8 < 0.15 && res.total_failures == 0;
  return {ok, false,
          "n=10 alpha=3, 20 inst: QAOA IF(p=4) " + fmt(q4) + " (tol > 0.5); ab IF(p=4) " +
              fmt(ab4) + " (tol < 0.3); ab IF(p=8) " + fmt(ab8) + " (tol < 0.15)"};
}

// ---------- criterion 8: levels protocol ----------

Outcome c8_levels_protocol() {
  // Hard cells sit at the measured P_SAT=0.5 crossing of this ensemble
  // (alpha inside (0.8, 1.0) for n <= 14), not at the asymptotic 0.6.
  const std::pair<int, double> cells[] = {{6, 1.0}, {8, 0.9}};
  bool ok = true;
  std::string detail = "hard-alpha decision cells, 20 inst:";
  for (auto [n, alpha] : cells) {
    ExperimentConfig cfg;
    cfg.seed = kSeed;
    cfg.n_list = {n};
    cfg.alphas = {alpha};
    cfg.algorithms = {AlgoKind::Qaoa, AlgoKind::AbQaoa};
    cfg.instances = 20;
    cfg.opt = fast_optimizer();
    cfg.problem = ProblemKind::Decision;
    cfg.threads = kThreads;

    LevelsResult res = levels_study(cfg);
    double q_mean = 0.0, ab_mean = 0.0;
    for (const LevelsCell& c : res.cells)
      (c.algo == AlgoKind::Qaoa ? q_mean : ab_mean) = c.mean_level;
    const double ratio = q_mean / ab_mean;
    ok = ok && ab_mean <= 8.0 && ratio >= 3.0 && res.total_failures == 0;
    detail += " n=" + std::to_string(n) + " alpha=" + fmt(alpha) + ": qaoa " + fmt(q_mean) +
              " vs ab " + fmt(ab_mean) + " (ratio " + fmt(ratio) +
              ", tol ab <= 8 and ratio >= 3)";
  }
  return {ok, false, detail};
}

// ---------- criterion 9: optimization-free convergence ----------

Outcome c9_ofab_convergence() {
  const int levels[] = {4, 8, 12, 16};
  Ensemble e = make_ensemble(10, 1.0, 20, kSeed);

  std::vector<std::vector<int>> wrong(4, std::vector<int>(20, 0));
  parallel_for(20, [&](int i) {
    const Formula& f = e.instances[i];
    GroundSolution g = brute_force_ground(f);
    std::set<uint32_t> grounds(g.ground_masks.begin(), g.ground_masks.end());

    OfabConfig cfg;  // p target 16; levels 4/8/12 read off the same chain
    cfg.p = 16;
    RngStream rng(derive_seed({kSeed, 9, static_cast<uint64_t>(i)}));
    OfabResult res = opt_free_run(f, cfg, rng);
    for (int li = 0; li < 4; ++li) {
      const OfabLevel& L = res.levels[levels[li] - 1];
      const uint32_t mask =
          mask_from_assignment(bias_state(L.fields[L.best_sample], cfg.tie));
      wrong[li][i] = grounds.count(mask) ? 0 : 1;
    }
  });

  double if4 = 0, if8 = 0, if12 = 0, if16 = 0;
  for (int i = 0; i < 20; ++i) {
    if4 += wrong[0][i];
    if8 += wrong[1][i];
    if12 += wrong[2][i];
    if16 += wrong[3][i];
  }
  if4 /= 20, if8 /= 20, if12 /= 20, if16 /= 20;

  const bool ok = if16 < 0.15 && if4 > if16;
  return {ok, false,
          "n=10 alpha=1, 20 inst, bias-state IF by level: p4 " + fmt(if4) + ", p8 " +
              fmt(if8) + ", p12 " + fmt(if12) + ", p16 " + fmt(if16) +
              " (tol IF(16) < 0.15 and IF(4) > IF(16))"};
}

// ---------- criterion 10: diagnostics ordering ----------

Outcome c10_diagnostics_ordering() {
  const int p = 8, inst = 10;
  Ensemble e = make_ensemble(10, 3.0, inst, kSeed);
  const std::vector<Metric> metrics{Metric::EntanglementEntropy,
                                    Metric::ParticipationRatio,
                                    Metric::AnnealingEntropy};

  OptimizerConfig opt = fast_optimizer();
  opt.store_snapshots = true;

  // per_task[task][metric][k], reduced serially afterwards
  std::vector<std::vector<std::vector<double>>> per_task(
      2 * inst, std::vector(size_t{3}, std::vector<double>(p + 1, 0.0)));
  std::vector<uint8_t> failed(2 * inst, 0);
  parallel_for(2 * inst, [&](int task) {
    const int ai = task % 2;
    const int i = task / 2;
    const Algorithm algo = ai == 0 ? Algorithm::Qaoa : Algorithm::AbQaoa;
    try {
      const Formula& f = e.instances[i];
      uint64_t rs = instance_run_seed(kSeed, ai == 0 ? AlgoKind::Qaoa : AlgoKind::AbQaoa,
                                      10, e.m, i);
      RunResult res = run(f, p, algo, InitStrategy::Tqa, opt, rs);
      auto series = trajectory_diagnostics(f, res.best, {1.0}, metrics);
      for (size_t mi = 0; mi < series.size(); ++mi)
        for (int k = 0; k <= p; ++k) per_task[task][mi][k] = series[mi].values[k];
    } catch (...) {
      failed[task] = 1;
    }
  });

  // sums[algo][metric][k]
  std::vector sums(2, std::vector(size_t{3}, std::vector<double>(p + 1, 0.0)));
  int failures = 0;
  for (int task = 0; task < 2 * inst; ++task) {
    failures += failed[task];
    for (int mi = 0; mi < 3; ++mi)
      for (int k = 0; k <= p; ++k) sums[task % 2][mi][k] += per_task[task][mi][k];
  }
  bool ok = failures == 0;
  std::string detail = "n=10 alpha=3 p=8 eta=1, 10 inst, ensemble means:";
  const char* names[3] = {"s_e", "PR", "s_a"};
  for (int mi = 0; mi < 3; ++mi) {
    bool at_or_below = true;
    for (int k = 2; k <= p; ++k)
      at_or_below = at_or_below && sums[1][mi][k] <= sums[0][mi][k] + 1e-9;
    const bool strict_at_p = sums[1][mi][p] < sums[0][mi][p];
    ok = ok && at_or_below && strict_at_p;
    detail += std::string(" ") + names[mi] + "(k=p): ab " + fmt(sums[1][mi][p] / inst) +
              " vs qaoa " + fmt(sums[0][mi][p] / inst) +
              (at_or_below ? " (ab <= qaoa for all k >= 2)" : " (ORDER VIOLATED)");
  }
  return {ok, false, detail};
}

// ---------- criterion 11 (soft): N_con window ----------

Outcome c11_ncon_window() {
  const SweepResult& res = ensure_c7().result;
  std::string detail = "criterion-7 cells, mean N_con:";
  bool window_ok = true, order_ok = true;
  for (int p : {4, 8}) {
    const double q = cell_at(res, AlgoKind::Qaoa, p).ncon_mean;
    const double ab = cell_at(res, AlgoKind::AbQaoa, p).ncon_mean;
    window_ok = window_ok && q >= 10 && q <= 60 && ab >= 10 && ab <= 60;
    order_ok = order_ok && ab <= q;
    detail += " p=" + std::to_string(p) + ": qaoa " + fmt(q) + ", ab " + fmt(ab) + ";";
  }
  detail += window_ok ? " window [10, 60] holds" : " WARN: outside window [10, 60]";
  detail += order_ok ? "; ab <= qaoa holds" : "; WARN: ab > qaoa in the mean";
  return {window_ok && order_ok, true, detail};
}

// ---------- criterion 12: thread determinism ----------

Outcome c12_thread_determinism() {
  const C6Artifacts& base = ensure_c6();

  // Rerun with a genuinely different worker count (oversubscription is fine;
  // run_tasks does not clamp to the core count).
  const int other = kThreads == 1 ? 3 : 1;
  ExperimentConfig cfg = c6_config(other);
  cfg.out_dir = temp_dir("c12").string();
  SweepResult serial = sweep(cfg);
  export_tables(sweep_table(serial), {{"criterion", 6}}, cfg.seed, serial.config,
                cfg.out_dir, "sweep");

  const std::string a_csv = file_bytes(base.out / "sweep.csv");
  const std::string b_csv = file_bytes(fs::path(cfg.out_dir) / "sweep.csv");
  const std::string a_man = file_bytes(base.out / "manifest.json");
  const std::string b_man = file_bytes(fs::path(cfg.out_dir) / "manifest.json");

  const bool ok = !a_csv.empty() && a_csv == b_csv && a_man == b_man;
  return {ok, false,
          "criterion-6 sweep, threads=" + std::to_string(kThreads) + " vs " +
              std::to_string(other) + ": CSV " +
              (a_csv == b_csv ? "byte-identical" : "DIFFERS") + " (" +
              std::to_string(a_csv.size()) + " bytes), manifest " +
              (a_man == b_man ? "byte-identical" : "DIFFERS")};
}

}  // namespace

int main(int argc, char** argv) {
  struct Entry {
    int id;
    const char* name;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {1, "oracle equivalence", c1_oracle_equivalence},
      {2, "reduction identity", c2_reduction_identity},
      {3, "entropy bound", c3_entropy_bound},
      {4, "SAT transition", c4_sat_transition},
      {5, "approximation error", c5_approximation_error},
      {6, "decision-problem gap", c6_decision_gap},
      {7, "reachability-deficit gap", c7_reachability_deficit},
      {8, "levels protocol", c8_levels_protocol},
      {9, "optimization-free convergence", c9_ofab_convergence},
      {10, "diagnostics ordering", c10_diagnostics_ordering},
      {11, "N_con sanity (soft)", c11_ncon_window},
      {12, "determinism", c12_thread_determinism},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  std::printf("acceptance gate: seed %llu, %d threads\n",
              static_cast<unsigned long long>(kSeed), kThreads);
  int hard_failures = 0, ran = 0;
  for (const Entry& e : entries) {
    if (!selected.empty() && !selected.count(e.id)) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e.fn();
    } catch (const std::exception& ex) {
      out = {false, false, std::string("exception: ") + ex.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const char* tag = out.pass ? "[PASS]" : (out.soft ? "[WARN]" : "[FAIL]");
    if (!out.pass && !out.soft) ++hard_failures;
    std::printf("%s C%-2d %s: %s [%.1f s]\n", tag, e.id, e.name, out.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%d criteria passed (soft warnings do not fail the gate)\n",
              ran - hard_failures, ran);
  return hard_failures == 0 ? 0 : 1;
}
