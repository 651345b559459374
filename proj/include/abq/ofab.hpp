#pragma once

#include <cstdint>
#include <vector>

#include "abq/rng.hpp"
#include "abq/sat.hpp"
#include "abq/statevector.hpp"

namespace abq {

// bit assigned to a qubit whose trained field is exactly zero
enum class TiePolicy { Zero, One };

struct OfabConfig {
  int p = 16;                       // target level of the chain
  int samples = 10;                 // R
  double delta_t = 0.6;
  double bias_learning_rate = 0.4;  // ell
  TiePolicy tie = TiePolicy::Zero;
};

// everything observed while passing through one level of the chain
struct OfabLevel {
  int level = 0;
  std::vector<int> sample_energies;          // bias-state energy per sample
  std::vector<double> sample_expectations;   // <H_C> of the evolved state (logged only)
  std::vector<BiasFields> fields;            // h after this level's update, per sample
  int best_energy = 0;
  int best_sample = 0;
};

struct OfabResult {
  std::vector<OfabLevel> levels;   // one entry per level 1..p
  int energy = 0;                  // exact H_C of the winning bias state at level p
  Assignment assignment;
  int best_sample = 0;
  long long state_preparations = 0;  // p * R
  long long layers_per_sample = 0;   // sum_{p'=1..p} p' = p(p+1)/2
};

// h_j > 0 -> bit 0, h_j < 0 -> bit 1, h_j = 0 -> tie policy
Assignment bias_state(const BiasFields& h, TiePolicy tie = TiePolicy::Zero);

// level-chained bias training with fixed linear schedules; no angle
// optimization anywhere. One statevector preparation and one bias update
// per (level, sample); fields carry forward between levels.
OfabResult opt_free_run(const Formula& f, const OfabConfig& cfg, RngStream& rng);

}  // namespace abq
