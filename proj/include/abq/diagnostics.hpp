#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "abq/sat.hpp"
#include "abq/statevector.hpp"
#include "abq/variational.hpp"

namespace abq {

struct BipartitionAverage {
  double mean = 0.0;
  // by_size[s-1]: mean entropy over the enumerated cuts with |A| = s, s <= n/2
  std::vector<double> by_size;
};

enum class Metric {
  EntanglementEntropy,
  ParticipationRatio,
  AnnealingEntropy,
  Infidelity,
  ResidualEnergy,
};

std::string to_string(Metric m);

// one metric traced along the circuit at a fixed optimization fraction
struct DiagnosticSeries {
  Metric metric{};
  double eta = 1.0;
  std::vector<double> values;  // index k = 0..p (k = 0 is the initial state)
};

double residual_energy(double e, const GroundSolution& g);
double residual_energy(double e, const Formula& f);

// 1 - total amplitude mass on the ground manifold
double infidelity(const StateVector& psi, const std::vector<uint32_t>& ground_masks);

// von Neumann entropy (base 2) averaged over all 2^(n-1) - 1 bipartitions;
// subsets enumerated up to size floor(n/2), half-size cuts counted once
BipartitionAverage entanglement_entropy_avg(const StateVector& psi);

// 1 / sum |amp|^4
double participation_ratio(const StateVector& psi);

// orthonormal eigenbasis of a unitary with per-column eigenphases in (-pi, pi].
// Built from the commuting Hermitian pair (U + U^dag)/2, (U - U^dag)/(2i).
struct UnitaryEigensystem {
  Eigen::MatrixXcd vectors;
  std::vector<double> phases;
};

UnitaryEigensystem unitary_eigensystem(const Eigen::MatrixXcd& u, double phase_tol = 1e-8);

// Shannon entropy (base 2) of psi's weight over the eigenspaces of u,
// eigenphases clustered within phase_tol
double annealing_entropy(const StateVector& psi, const UnitaryEigensystem& es,
                         double phase_tol = 1e-8);
double annealing_entropy(const StateVector& psi, const Eigen::MatrixXcd& u,
                         double phase_tol = 1e-8);

// replay the evolution at the snapshot closest to each optimization fraction
// eta (iteration ceil(eta * N_con)) and tabulate each metric at every k
std::vector<DiagnosticSeries> trajectory_diagnostics(const Formula& f, const RunRecord& rec,
                                                     const std::vector<double>& etas,
                                                     const std::vector<Metric>& metrics);

// fraction of instances where the algorithm's verdict matches the oracle
double success_probability(const std::vector<Verdict>& verdicts,
                           const std::vector<bool>& truths);

// fraction of instances that are satisfiable
double sat_probability(const std::vector<bool>& truths);

}  // namespace abq
