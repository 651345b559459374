#include "abq/ofab.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "abq/variational.hpp"

namespace abq {

Assignment bias_state(const BiasFields& h, TiePolicy tie) {
  Assignment a(h.size());
  for (size_t j = 0; j < h.size(); ++j) {
    if (!std::isfinite(h[j])) throw std::invalid_argument("non-finite bias field");
    if (h[j] > 0.0)
      a[j] = 0;
    else if (h[j] < 0.0)
      a[j] = 1;
    else
      a[j] = tie == TiePolicy::Zero ? 0 : 1;
  }
  return a;
}

OfabResult opt_free_run(const Formula& f, const OfabConfig& cfg, RngStream& rng) {
  if (cfg.p < 1 || cfg.samples < 1)
    throw std::invalid_argument("opt_free_run needs p >= 1, R >= 1");
  const CostDiagonal c = build_cost_diagonal(f);

  std::vector<BiasFields> fields(cfg.samples);
  for (BiasFields& h : fields) {
    h.resize(f.n);
    for (int j = 0; j < f.n; ++j) h[j] = rng.next_sign();
  }

  OfabResult res;
  res.levels.reserve(cfg.p);
  for (int lv = 1; lv <= cfg.p; ++lv) {
    Schedule s;
    s.gamma.resize(lv);
    s.beta.resize(lv);
    for (int k = 0; k < lv; ++k) {
      s.gamma[k] = (static_cast<double>(k) / lv) * cfg.delta_t;
      s.beta[k] = (1.0 - static_cast<double>(k) / lv) * cfg.delta_t;
    }

    OfabLevel out;
    out.level = lv;
    out.best_energy = std::numeric_limits<int>::max();
    for (int r = 0; r < cfg.samples; ++r) {
      BiasFields& h = fields[r];
      StateVector psi = evolve(prepare_initial_state(h), s, h, c);
      out.sample_expectations.push_back(expectation_energy(psi, c));
      update_bias(h, expectation_z_all(psi), cfg.bias_learning_rate);
      const int e = penalty_energy(f, bias_state(h, cfg.tie));
      out.sample_energies.push_back(e);
      out.fields.push_back(h);
      if (e < out.best_energy) {
        out.best_energy = e;
        out.best_sample = r;
      }
    }
    res.levels.push_back(std::move(out));
  }

  const OfabLevel& last = res.levels.back();
  res.energy = last.best_energy;
  res.best_sample = last.best_sample;
  res.assignment = bias_state(fields[last.best_sample], cfg.tie);
  res.state_preparations = static_cast<long long>(cfg.p) * cfg.samples;
  res.layers_per_sample = static_cast<long long>(cfg.p) * (cfg.p + 1) / 2;
  return res;
}

}  // namespace abq
