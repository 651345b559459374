#include "abq/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace abq {

std::string to_string(Algorithm a) {
  return a == Algorithm::Qaoa ? "qaoa" : "ab_qaoa";
}

std::string to_string(Verdict v) { return v == Verdict::Sat ? "SAT" : "UNSAT"; }

std::vector<InitPoint> tqa_init(int p, int r_count, double delta_t, double xi, int n,
                                RngStream& rng) {
  if (p < 1 || r_count < 1) throw std::invalid_argument("tqa_init needs p >= 1, R >= 1");
  std::vector<InitPoint> points;
  points.reserve(r_count);
  std::vector<double> g1(p), b1(p);
  for (int k = 0; k < p; ++k) {
    g1[k] = (static_cast<double>(k) / p) * delta_t;
    b1[k] = (1.0 - static_cast<double>(k) / p) * delta_t;
  }
  for (int r = 1; r <= r_count; ++r) {
    InitPoint pt;
    pt.h.resize(n);
    for (int j = 0; j < n; ++j) pt.h[j] = rng.next_sign();
    if (r == 1) {
      pt.gamma = g1;
      pt.beta = b1;
    } else {
      pt.gamma.resize(p);
      pt.beta.resize(p);
      for (int k = 0; k < p; ++k)
        pt.gamma[k] = g1[k] + xi * std::abs(g1[k]) * rng.next_normal();
      for (int k = 0; k < p; ++k)
        pt.beta[k] = b1[k] + xi * std::abs(b1[k]) * rng.next_normal();
    }
    points.push_back(std::move(pt));
  }
  return points;
}

std::vector<InitPoint> fourier_level_points(int p, int r_count, double xi, int n,
                                            const std::optional<Schedule>& previous_best,
                                            RngStream& rng) {
  if (p < 1 || r_count < 1) throw std::invalid_argument("need p >= 1, R >= 1");
  if (previous_best && previous_best->level() > p)
    throw std::invalid_argument("previous level exceeds current level");
  std::vector<InitPoint> points;
  points.reserve(r_count);
  for (int r = 1; r <= r_count; ++r) {
    InitPoint pt;
    pt.h.resize(n);
    for (int j = 0; j < n; ++j) pt.h[j] = rng.next_sign();
    pt.gamma.assign(p, 0.0);
    pt.beta.assign(p, 0.0);
    if (!previous_best) {
      for (int k = 0; k < p; ++k) pt.gamma[k] = rng.next_double() * 2.0 * M_PI;
      for (int k = 0; k < p; ++k) pt.beta[k] = rng.next_double() * M_PI;
    } else {
      const int prev = previous_best->level();
      for (int k = 0; k < prev; ++k) {
        pt.gamma[k] = previous_best->gamma[k];
        pt.beta[k] = previous_best->beta[k];
      }
      if (r >= 2) {
        for (int k = 0; k < prev; ++k)
          pt.gamma[k] += xi * std::abs(previous_best->gamma[k]) * rng.next_normal();
        for (int k = 0; k < prev; ++k)
          pt.beta[k] += xi * std::abs(previous_best->beta[k]) * rng.next_normal();
      }
    }
    points.push_back(std::move(pt));
  }
  return points;
}

std::vector<double> gradient_central_difference(const Schedule& s, const BiasFields& h,
                                                const CostDiagonal& c, double fd_step) {
  if (fd_step <= 0) throw std::invalid_argument("finite-difference step must be positive");
  const int p = s.level();
  const StateVector psi0 = prepare_initial_state(h);
  auto energy_at = [&](const Schedule& sv) {
    return expectation_energy(evolve(psi0, sv, h, c), c);
  };
  std::vector<double> grad(2 * p);
  Schedule sv = s;
  for (int k = 0; k < p; ++k) {
    sv.gamma[k] = s.gamma[k] + fd_step;
    const double ep = energy_at(sv);
    sv.gamma[k] = s.gamma[k] - fd_step;
    const double em = energy_at(sv);
    sv.gamma[k] = s.gamma[k];
    grad[k] = (ep - em) / (2.0 * fd_step);
  }
  for (int k = 0; k < p; ++k) {
    sv.beta[k] = s.beta[k] + fd_step;
    const double ep = energy_at(sv);
    sv.beta[k] = s.beta[k] - fd_step;
    const double em = energy_at(sv);
    sv.beta[k] = s.beta[k];
    grad[p + k] = (ep - em) / (2.0 * fd_step);
  }
  return grad;
}

std::vector<double> gradient_adjoint(const Schedule& s, const BiasFields& h,
                                     const CostDiagonal& c) {
  const int p = s.level();
  std::vector<double> grad(2 * p);
  StateVector ket = evolve(prepare_initial_state(h), s, h, c);
  StateVector bra = ket;
  for (size_t z = 0; z < bra.dim(); ++z) bra[z] *= static_cast<double>(c.energies[z]);
  for (int k = p - 1; k >= 0; --k) {
    StateVector hm = apply_mixing_hamiltonian(ket, h);
    grad[p + k] = 2.0 * std::imag(overlap(bra, hm));
    apply_mixer(ket, -s.beta[k], h);
    apply_mixer(bra, -s.beta[k], h);
    cxd acc{0.0, 0.0};
    for (size_t z = 0; z < ket.dim(); ++z)
      acc += std::conj(bra[z]) * (static_cast<double>(c.energies[z]) * ket[z]);
    grad[k] = 2.0 * std::imag(acc);
    apply_cost_phase(ket, -s.gamma[k], c);
    apply_cost_phase(bra, -s.gamma[k], c);
  }
  return grad;
}

std::vector<double> gradient(const Schedule& s, const BiasFields& h, const CostDiagonal& c,
                             const OptimizerConfig& cfg) {
  return cfg.gradient == GradientMethod::Adjoint
             ? gradient_adjoint(s, h, c)
             : gradient_central_difference(s, h, c, cfg.fd_step);
}

void update_bias(BiasFields& h, const std::vector<double>& z_exp, double ell) {
  if (h.size() != z_exp.size()) throw std::invalid_argument("bias/< Z > length mismatch");
  for (size_t j = 0; j < h.size(); ++j) {
    if (std::abs(z_exp[j]) > 1.0 + 1e-9)
      throw std::invalid_argument("<Z_j> outside [-1, 1]");
    h[j] -= ell * (h[j] - z_exp[j]);
  }
}

RunRecord optimize_sample(const CostDiagonal& c, const InitPoint& point,
                          const OptimizerConfig& cfg) {
  const int p = static_cast<int>(point.gamma.size());
  RunRecord rec;
  Schedule s{point.gamma, point.beta};
  canonicalize(s);
  BiasFields h = point.h;
  const double ell = cfg.bias_learning_rate;

  std::vector<double> m(2 * p, 0.0), v(2 * p, 0.0);  // Adam moments
  std::vector<double> running_best;
  rec.best_energy = std::numeric_limits<double>::infinity();

  for (int t = 1; t <= cfg.max_iterations; ++t) {
    StateVector psi = evolve(prepare_initial_state(h), s, h, c);
    const double e = expectation_energy(psi, c);
    if (!std::isfinite(e))
      throw std::runtime_error("non-finite energy at iteration " + std::to_string(t));
    const std::vector<double> zs = expectation_z_all(psi);

    rec.energy_trace.push_back(e);
    if (cfg.store_snapshots) {
      rec.angle_snapshots.push_back(s);
      rec.bias_snapshots.push_back(h);
    }
    if (e < rec.best_energy) {
      rec.best_energy = e;
      rec.best_iteration = t;
      rec.best_schedule = s;
      rec.best_bias = h;
    }
    running_best.push_back(rec.best_energy);
    rec.n_con = t;

    const int w = cfg.convergence_window;
    if (t > w && running_best[t - 1 - w] - running_best[t - 1] < cfg.convergence_tol)
      break;
    if (t == cfg.max_iterations) break;

    const std::vector<double> grad = gradient(s, h, c, cfg);
    const double bc1 = 1.0 - std::pow(cfg.adam.beta1, t);
    const double bc2 = 1.0 - std::pow(cfg.adam.beta2, t);
    for (int i = 0; i < 2 * p; ++i) {
      m[i] = cfg.adam.beta1 * m[i] + (1.0 - cfg.adam.beta1) * grad[i];
      v[i] = cfg.adam.beta2 * v[i] + (1.0 - cfg.adam.beta2) * grad[i] * grad[i];
      const double step = cfg.adam.step * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + cfg.adam.epsilon);
      if (i < p)
        s.gamma[i] -= step;
      else
        s.beta[i - p] -= step;
    }
    canonicalize(s);
    update_bias(h, zs, ell);
  }

  rec.final_state = evolve(prepare_initial_state(rec.best_bias), rec.best_schedule,
                           rec.best_bias, c);
  return rec;
}

namespace {

RunResult best_of_points(const CostDiagonal& c, const std::vector<InitPoint>& points,
                         const OptimizerConfig& cfg) {
  RunResult res;
  std::string first_error;
  int failures = 0;
  for (size_t r = 0; r < points.size(); ++r) {
    try {
      RunRecord rec = optimize_sample(c, points[r], cfg);
      res.sample_energies.push_back(rec.best_energy);
      if (res.best.energy_trace.empty() || rec.best_energy < res.best.best_energy) {
        res.best_sample = static_cast<int>(r);
        res.best = std::move(rec);
      }
    } catch (const std::exception& ex) {
      ++failures;
      res.sample_energies.push_back(std::numeric_limits<double>::quiet_NaN());
      if (first_error.empty()) first_error = ex.what();
    }
  }
  if (failures == static_cast<int>(points.size()))
    throw std::runtime_error("all samples failed: " + first_error);
  return res;
}

}  // namespace

RunResult run(const CostDiagonal& c, int p, Algorithm algo, InitStrategy init,
              const OptimizerConfig& cfg, uint64_t seed) {
  OptimizerConfig ecfg = cfg;
  if (algo == Algorithm::Qaoa) {
    ecfg.bias_learning_rate = 0.0;
    ecfg.zero_bias_init = true;
  }
  RngStream rng(derive_seed({seed, static_cast<uint64_t>(p)}));

  auto zero_bias = [&](std::vector<InitPoint>& pts) {
    if (!ecfg.zero_bias_init) return;
    for (InitPoint& pt : pts) std::fill(pt.h.begin(), pt.h.end(), 0.0);
  };

  if (init == InitStrategy::Tqa) {
    std::vector<InitPoint> points =
        tqa_init(p, ecfg.samples, ecfg.delta_t, ecfg.xi, c.n, rng);
    zero_bias(points);
    return best_of_points(c, points, ecfg);
  }

  // Fourier chain: pass through the configured levels below p, ending at p
  std::vector<int> levels;
  for (int lv : ecfg.fourier_levels)
    if (lv < p) levels.push_back(lv);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  levels.push_back(p);

  RunResult res;
  std::vector<double> level_energies;
  std::optional<Schedule> previous_best;
  for (int lv : levels) {
    // a stream per level, so R at one level cannot shift another level's draws
    RngStream level_rng(derive_seed({seed, static_cast<uint64_t>(p),
                                     static_cast<uint64_t>(lv)}));
    std::vector<InitPoint> points =
        fourier_level_points(lv, ecfg.samples, ecfg.xi, c.n, previous_best, level_rng);
    zero_bias(points);
    res = best_of_points(c, points, ecfg);
    level_energies.push_back(res.best.best_energy);
    previous_best = res.best.best_schedule;
  }
  res.fourier_level_energies = std::move(level_energies);
  return res;
}

RunResult run(const Formula& f, int p, Algorithm algo, InitStrategy init,
              const OptimizerConfig& cfg, uint64_t seed) {
  return run(build_cost_diagonal(f), p, algo, init, cfg, seed);
}

Verdict decide_sat(double best_energy, double e_th) {
  return best_energy < e_th ? Verdict::Sat : Verdict::Unsat;
}

}  // namespace abq
