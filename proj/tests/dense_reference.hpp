// Independent dense-matrix reference implementations used as oracles.
// Everything here is built from explicit 2^n x 2^n matrices and Eigen's
// matrix exponential, sharing no evolution code with the fast engine.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "abq/rng.hpp"
#include "abq/sat.hpp"
#include "abq/statevector.hpp"

namespace abq::testref {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline VectorXcd to_vector(const StateVector& psi) {
  return Eigen::Map<const VectorXcd>(psi.data(), static_cast<Eigen::Index>(psi.dim()));
}

inline StateVector from_vector(const VectorXcd& v, int n) {
  StateVector psi(n);
  for (Eigen::Index z = 0; z < v.size(); ++z) psi[static_cast<size_t>(z)] = v(z);
  return psi;
}

// diag(E) from the clause penalties, evaluated clause by clause rather than
// through build_cost_diagonal
inline MatrixXcd dense_cost_hamiltonian(const Formula& f) {
  const size_t dim = size_t{1} << f.n;
  MatrixXcd h = MatrixXcd::Zero(dim, dim);
  for (size_t z = 0; z < dim; ++z) {
    int e = 0;
    for (const auto& cl : f.clauses) {
      int t = ((z >> cl[0]) & 1) + ((z >> cl[1]) & 1) + ((z >> cl[2]) & 1);
      e += (t - 1) * (t - 1);
    }
    h(z, z) = static_cast<double>(e);
  }
  return h;
}

// sum_j (X_j - h_j Z_j) / sqrt(1 + h_j^2) assembled entry by entry
inline MatrixXcd dense_mixing_hamiltonian(const std::vector<double>& h, int n) {
  const size_t dim = size_t{1} << n;
  MatrixXcd m = MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    double norm = std::sqrt(1.0 + h[j] * h[j]);
    for (size_t z = 0; z < dim; ++z) {
      m(z ^ (size_t{1} << j), z) += 1.0 / norm;                      // X_j
      double zj = ((z >> j) & 1) ? -1.0 : 1.0;                       // Z|0>=+|0>
      m(z, z) -= h[j] * zj / norm;
    }
  }
  return m;
}

inline MatrixXcd expm_minus_i(const MatrixXcd& h, double angle) {
  return (std::complex<double>(0.0, -angle) * h).exp();
}

// full alternating evolution as one dense matrix product, cost phase first
inline VectorXcd dense_evolve(const VectorXcd& psi0, const Schedule& s,
                              const std::vector<double>& h, const Formula& f) {
  MatrixXcd hc = dense_cost_hamiltonian(f);
  MatrixXcd hm = dense_mixing_hamiltonian(h, f.n);
  VectorXcd v = psi0;
  for (int k = 0; k < s.level(); ++k) {
    v = expm_minus_i(hc, s.gamma[k]) * v;
    v = expm_minus_i(hm, s.beta[k]) * v;
  }
  return v;
}

inline StateVector random_state(int n, RngStream& rng) {
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

inline std::vector<double> random_bias(int n, double scale, RngStream& rng) {
  std::vector<double> h(n);
  for (double& x : h) x = scale * (2.0 * rng.next_double() - 1.0);
  return h;
}

inline Formula random_formula(int n, double alpha, uint64_t seed) {
  RngStream rng(seed);
  return generate_instance(n, alpha, rng);
}

inline Formula random_formula_m(int n, int m, uint64_t seed) {
  RngStream rng(seed);
  return generate_instance_m(n, m, rng);
}

}  // namespace abq::testref
