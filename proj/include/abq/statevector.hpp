#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "abq/sat.hpp"

namespace abq {

using cxd = std::complex<double>;

// Diagonal of the Ising cost Hamiltonian. Index z encodes an assignment with
// bit j of z giving variable j's value (bit 0 <-> |0> <-> False).
struct CostDiagonal {
  int n = 0;
  std::vector<int32_t> energies;  // length 2^n, non-negative integers

  size_t dim() const { return energies.size(); }
  int min_energy() const;
  int max_energy() const;
};

// Per-qubit longitudinal bias fields; h = 0 recovers the plain transverse mixer.
using BiasFields = std::vector<double>;

struct Schedule {
  std::vector<double> gamma;  // each in [0, 2*pi) after canonicalization
  std::vector<double> beta;   // each in [0, pi) after canonicalization

  int level() const { return static_cast<int>(gamma.size()); }
};

// wrap into [0, period)
double wrap_angle(double x, double period);
void canonicalize(Schedule& s);

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n);  // |0...0>

  int num_qubits() const { return n_; }
  size_t dim() const { return amp_.size(); }
  cxd* data() { return amp_.data(); }
  const cxd* data() const { return amp_.data(); }
  std::vector<cxd>& amplitudes() { return amp_; }
  const std::vector<cxd>& amplitudes() const { return amp_; }
  cxd& operator[](size_t z) { return amp_[z]; }
  const cxd& operator[](size_t z) const { return amp_[z]; }

  double norm_sq() const;
  // hard error if the norm drifted; the engine never renormalizes
  void check_norm(const char* where) const;

 private:
  int n_ = 0;
  std::vector<cxd> amp_;
};

inline constexpr int kEngineMaxQubits = 24;
inline constexpr int kDenseMaxQubits = 12;

CostDiagonal build_cost_diagonal(const Formula& f);

// d_j = atan(h_j), so that cos d_j = 1/sqrt(1+h_j^2) and sin d_j = h_j/sqrt(1+h_j^2)
std::vector<double> rotation_angles(const BiasFields& h);

// product state Ry(d_j)|->_j, the ground state of the biased mixing Hamiltonian
StateVector prepare_initial_state(const BiasFields& h);

// amp[z] *= exp(-i * gamma * energies[z])
void apply_cost_phase(StateVector& psi, double gamma, const CostDiagonal& c);

// per qubit: cos(beta) I - i sin(beta) B_j with B_j = (X - h_j Z)/sqrt(1+h_j^2)
void apply_mixer(StateVector& psi, double beta, const BiasFields& h);

// exp(-i H_M^ab(h)) generator applied once: out = sum_j B_j |psi>
StateVector apply_mixing_hamiltonian(const StateVector& psi, const BiasFields& h);

// alternating evolution, cost phase first within each step
StateVector evolve(StateVector psi, const Schedule& s, const BiasFields& h,
                   const CostDiagonal& c);

double expectation_energy(const StateVector& psi, const CostDiagonal& c);
double expectation_z(const StateVector& psi, int qubit);
std::vector<double> expectation_z_all(const StateVector& psi);

cxd overlap(const StateVector& a, const StateVector& b);  // <a|b>

// dense 2^n x 2^n step unitary U = exp(-i beta H_M) exp(-i gamma H_C); n <= 12
Eigen::MatrixXcd build_step_unitary(double gamma, double beta, const BiasFields& h,
                                    const CostDiagonal& c);

}  // namespace abq
