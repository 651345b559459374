#include "abq/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace abq {

int CostDiagonal::min_energy() const {
  return *std::min_element(energies.begin(), energies.end());
}

int CostDiagonal::max_energy() const {
  return *std::max_element(energies.begin(), energies.end());
}

double wrap_angle(double x, double period) {
  double w = std::fmod(x, period);
  if (w < 0) w += period;
  return w;
}

void canonicalize(Schedule& s) {
  for (double& g : s.gamma) g = wrap_angle(g, 2.0 * M_PI);
  for (double& b : s.beta) b = wrap_angle(b, M_PI);
}

StateVector::StateVector(int n) : n_(n), amp_(size_t{1} << n, cxd{0.0, 0.0}) {
  if (n < 1 || n > kEngineMaxQubits)
    throw std::invalid_argument("qubit count out of range");
  amp_[0] = 1.0;
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const cxd& a : amp_) s += std::norm(a);
  return s;
}

void StateVector::check_norm(const char* where) const {
  double s = norm_sq();
  if (std::abs(s - 1.0) > 1e-10)
    throw std::runtime_error(std::string("state norm lost in ") + where + ": |psi|^2 = " +
                             std::to_string(s));
}

CostDiagonal build_cost_diagonal(const Formula& f) {
  if (f.n > kEngineMaxQubits)
    throw std::invalid_argument("cost diagonal capped at n <= 24");
  CostDiagonal c;
  c.n = f.n;
  c.energies.assign(size_t{1} << f.n, 0);
  for (const Clause& cl : f.clauses) {
    uint32_t cm = (1u << cl[0]) | (1u << cl[1]) | (1u << cl[2]);
    for (size_t z = 0; z < c.energies.size(); ++z) {
      int t = std::popcount(static_cast<uint32_t>(z) & cm);
      c.energies[z] += (t - 1) * (t - 1);
    }
  }
  return c;
}

std::vector<double> rotation_angles(const BiasFields& h) {
  std::vector<double> d(h.size());
  for (size_t j = 0; j < h.size(); ++j) {
    if (!std::isfinite(h[j])) throw std::invalid_argument("bias field must be finite");
    d[j] = std::atan(h[j]);
  }
  return d;
}

StateVector prepare_initial_state(const BiasFields& h) {
  const int n = static_cast<int>(h.size());
  StateVector psi(n);
  const std::vector<double> d = rotation_angles(h);
  // Ry(d)|-> has amplitudes ((cos(d/2)+sin(d/2)), -(cos(d/2)-sin(d/2)))/sqrt(2)
  std::vector<double> a0(n), a1(n);
  for (int j = 0; j < n; ++j) {
    double c = std::cos(0.5 * d[j]), s = std::sin(0.5 * d[j]);
    a0[j] = (c + s) * M_SQRT1_2;
    a1[j] = -(c - s) * M_SQRT1_2;
  }
  auto& amp = psi.amplitudes();
  amp[0] = 1.0;
  size_t filled = 1;
  for (int j = 0; j < n; ++j) {
    for (size_t z = 0; z < filled; ++z) {
      amp[z + filled] = amp[z] * a1[j];
      amp[z] *= a0[j];
    }
    filled <<= 1;
  }
  psi.check_norm("prepare_initial_state");
  return psi;
}

void apply_cost_phase(StateVector& psi, double gamma, const CostDiagonal& c) {
  if (psi.dim() != c.dim()) throw std::invalid_argument("dimension mismatch");
  // integer spectrum: build a phase table over the distinct energies
  const int emax = c.max_energy();
  std::vector<cxd> phase(static_cast<size_t>(emax) + 1);
  for (int e = 0; e <= emax; ++e)
    phase[e] = std::polar(1.0, -gamma * e);
  auto& amp = psi.amplitudes();
  for (size_t z = 0; z < amp.size(); ++z) amp[z] *= phase[c.energies[z]];
}

namespace {

struct MixerGate {
  cxd u00, u01, u10, u11;
};

MixerGate mixer_gate(double beta, double hj) {
  const double cj = 1.0 / std::sqrt(1.0 + hj * hj);
  const double cb = std::cos(beta), sb = std::sin(beta);
  // cos(b) I - i sin(b) (X - h Z) c
  return MixerGate{cxd{cb, -sb * (-hj) * cj}, cxd{0.0, -sb * cj},
                   cxd{0.0, -sb * cj}, cxd{cb, -sb * hj * cj}};
}

void apply_single_qubit(std::vector<cxd>& amp, int qubit, const MixerGate& g) {
  const size_t stride = size_t{1} << qubit;
  const size_t dim = amp.size();
  for (size_t base = 0; base < dim; base += 2 * stride) {
    for (size_t z = base; z < base + stride; ++z) {
      cxd a = amp[z], b = amp[z + stride];
      amp[z] = g.u00 * a + g.u01 * b;
      amp[z + stride] = g.u10 * a + g.u11 * b;
    }
  }
}

}  // namespace

void apply_mixer(StateVector& psi, double beta, const BiasFields& h) {
  if (static_cast<int>(h.size()) != psi.num_qubits())
    throw std::invalid_argument("bias field length mismatch");
  auto& amp = psi.amplitudes();
  for (int j = 0; j < psi.num_qubits(); ++j)
    apply_single_qubit(amp, j, mixer_gate(beta, h[j]));
}

StateVector apply_mixing_hamiltonian(const StateVector& psi, const BiasFields& h) {
  StateVector out = psi;
  auto& acc = out.amplitudes();
  std::fill(acc.begin(), acc.end(), cxd{0.0, 0.0});
  const auto& amp = psi.amplitudes();
  for (int j = 0; j < psi.num_qubits(); ++j) {
    const double cj = 1.0 / std::sqrt(1.0 + h[j] * h[j]);
    const size_t stride = size_t{1} << j;
    // B_j = c_j (X - h_j Z): on (a, b) gives c_j(b - h a, a + h b)
    for (size_t base = 0; base < amp.size(); base += 2 * stride) {
      for (size_t z = base; z < base + stride; ++z) {
        cxd a = amp[z], b = amp[z + stride];
        acc[z] += cj * (b - h[j] * a);
        acc[z + stride] += cj * (a + h[j] * b);
      }
    }
  }
  return out;
}

StateVector evolve(StateVector psi, const Schedule& s, const BiasFields& h,
                   const CostDiagonal& c) {
  if (s.beta.size() != s.gamma.size())
    throw std::invalid_argument("schedule gamma/beta length mismatch");
  for (int k = 0; k < s.level(); ++k) {
    apply_cost_phase(psi, s.gamma[k], c);
    apply_mixer(psi, s.beta[k], h);
    psi.check_norm("evolve");
  }
  return psi;
}

double expectation_energy(const StateVector& psi, const CostDiagonal& c) {
  if (psi.dim() != c.dim()) throw std::invalid_argument("dimension mismatch");
  double e = 0.0;
  const auto& amp = psi.amplitudes();
  for (size_t z = 0; z < amp.size(); ++z) e += std::norm(amp[z]) * c.energies[z];
  return e;
}

double expectation_z(const StateVector& psi, int qubit) {
  if (qubit < 0 || qubit >= psi.num_qubits())
    throw std::invalid_argument("qubit index out of range");
  const auto& amp = psi.amplitudes();
  double z0 = 0.0;
  const size_t stride = size_t{1} << qubit;
  for (size_t base = 0; base < amp.size(); base += 2 * stride)
    for (size_t z = base; z < base + stride; ++z) z0 += std::norm(amp[z]);
  return 2.0 * z0 - psi.norm_sq();
}

std::vector<double> expectation_z_all(const StateVector& psi) {
  const int n = psi.num_qubits();
  std::vector<double> p1(n, 0.0);
  const auto& amp = psi.amplitudes();
  for (size_t z = 0; z < amp.size(); ++z) {
    double w = std::norm(amp[z]);
    for (int j = 0; j < n; ++j)
      if ((z >> j) & 1) p1[j] += w;
  }
  std::vector<double> zs(n);
  for (int j = 0; j < n; ++j) zs[j] = 1.0 - 2.0 * p1[j];
  return zs;
}

cxd overlap(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  cxd s{0.0, 0.0};
  for (size_t z = 0; z < a.dim(); ++z) s += std::conj(a[z]) * b[z];
  return s;
}

Eigen::MatrixXcd build_step_unitary(double gamma, double beta, const BiasFields& h,
                                    const CostDiagonal& c) {
  if (c.n > kDenseMaxQubits)
    throw std::invalid_argument("dense unitary capped at n <= 12");
  const auto dim = static_cast<Eigen::Index>(c.dim());
  Eigen::MatrixXcd u(dim, dim);
  // apply the step to each basis column; cheaper and simpler than expm
  StateVector col(c.n);
  for (Eigen::Index z = 0; z < dim; ++z) {
    auto& amp = col.amplitudes();
    std::fill(amp.begin(), amp.end(), cxd{0.0, 0.0});
    amp[z] = 1.0;
    apply_cost_phase(col, gamma, c);
    apply_mixer(col, beta, h);
    for (Eigen::Index r = 0; r < dim; ++r) u(r, z) = amp[r];
  }
  return u;
}

}  // namespace abq
