#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abq/rng.hpp"
#include "abq/statevector.hpp"

namespace abq {

enum class Algorithm { Qaoa, AbQaoa };
enum class InitStrategy { Tqa, Fourier };
enum class GradientMethod { CentralDifference, Adjoint };
enum class Verdict { Sat, Unsat };

std::string to_string(Algorithm a);
std::string to_string(Verdict v);

struct AdamParams {
  double step = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct OptimizerConfig {
  double bias_learning_rate = 0.4;  // ell; forced to 0 for plain QAOA
  AdamParams adam;
  double fd_step = 1e-3;
  GradientMethod gradient = GradientMethod::CentralDifference;
  double convergence_tol = 1e-5;
  int convergence_window = 5;
  int max_iterations = 500;
  int samples = 10;  // R
  double delta_t = 0.6;
  double xi = 0.6;
  std::vector<int> fourier_levels = {1, 2, 4, 8, 16, 24};
  bool store_snapshots = true;
  // start every sample from h = 0 (used by the QAOA reduction; QAOA sets it)
  bool zero_bias_init = false;
};

struct InitPoint {
  std::vector<double> gamma;
  std::vector<double> beta;
  std::vector<double> h;  // components +1/-1 at creation
};

struct RunRecord {
  std::vector<double> energy_trace;        // one entry per iteration
  std::vector<Schedule> angle_snapshots;   // parameters used at each iteration
  std::vector<BiasFields> bias_snapshots;
  int n_con = 0;                           // iterations executed
  double best_energy = 0.0;
  int best_iteration = 0;                  // 1-based
  Schedule best_schedule;
  BiasFields best_bias;
  StateVector final_state;                 // state at the best point
};

struct RunResult {
  RunRecord best;
  int best_sample = 0;                      // index into sample_energies
  std::vector<double> sample_energies;      // best energy of each of the R samples
  std::vector<double> fourier_level_energies;  // per-level best when init=Fourier
};

// Modified TQA initialization: point 1 is the linear ramp, points r >= 2
// perturb it by Ran(u) = xi * Normal(0, u^2); all bias components are +/-1.
std::vector<InitPoint> tqa_init(int p, int r_count, double delta_t, double xi, int n,
                                RngStream& rng);

// One level of the modified Fourier strategy: copy the previous best angles
// into the first slots (zero-padded), perturb copies for r >= 2, fresh bias.
std::vector<InitPoint> fourier_level_points(int p, int r_count, double xi, int n,
                                            const std::optional<Schedule>& previous_best,
                                            RngStream& rng);

// d<H_C>/d(gamma_k, beta_k) at fixed h; layout [gamma_1..gamma_p, beta_1..beta_p]
std::vector<double> gradient(const Schedule& s, const BiasFields& h, const CostDiagonal& c,
                             const OptimizerConfig& cfg);
std::vector<double> gradient_central_difference(const Schedule& s, const BiasFields& h,
                                                const CostDiagonal& c, double fd_step);
std::vector<double> gradient_adjoint(const Schedule& s, const BiasFields& h,
                                     const CostDiagonal& c);

// h_j -> h_j - ell (h_j - <Z_j>)
void update_bias(BiasFields& h, const std::vector<double>& z_exp, double ell);

RunRecord optimize_sample(const CostDiagonal& c, const InitPoint& point,
                          const OptimizerConfig& cfg);

// best of R independently optimized samples; all R points are drawn up front
// from one stream derived from (seed, p), so raising R keeps earlier samples
// (and therefore the returned best on a fixed prefix) unchanged
RunResult run(const CostDiagonal& c, int p, Algorithm algo, InitStrategy init,
              const OptimizerConfig& cfg, uint64_t seed);
RunResult run(const Formula& f, int p, Algorithm algo, InitStrategy init,
              const OptimizerConfig& cfg, uint64_t seed);

Verdict decide_sat(double best_energy, double e_th = 0.5);

}  // namespace abq
