#include "abq/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace abq {

namespace {

constexpr double kWeightFloor = 1e-15;

double shannon_bits(const std::vector<double>& weights) {
  double s = 0.0;
  for (double w : weights)
    if (w > kWeightFloor) s -= w * std::log2(w);
  return std::max(0.0, s);  // weights of 1 + eps would otherwise land at -0.0...
}

}  // namespace

std::string to_string(Metric m) {
  switch (m) {
    case Metric::EntanglementEntropy: return "entanglement_entropy";
    case Metric::ParticipationRatio: return "participation_ratio";
    case Metric::AnnealingEntropy: return "annealing_entropy";
    case Metric::Infidelity: return "infidelity";
    case Metric::ResidualEnergy: return "residual_energy";
  }
  throw std::invalid_argument("unknown metric");
}

double residual_energy(double e, const GroundSolution& g) {
  return e - static_cast<double>(g.energy);
}

double residual_energy(double e, const Formula& f) {
  return residual_energy(e, brute_force_ground(f));
}

double infidelity(const StateVector& psi, const std::vector<uint32_t>& ground_masks) {
  if (ground_masks.empty()) throw std::invalid_argument("empty ground manifold");
  double mass = 0.0;
  for (uint32_t z : ground_masks) {
    if (z >= psi.dim()) throw std::invalid_argument("ground mask out of range");
    mass += std::norm(psi[z]);
  }
  return 1.0 - mass;
}

BipartitionAverage entanglement_entropy_avg(const StateVector& psi) {
  const int n = psi.num_qubits();
  if (n < 2 || n > 14)
    throw std::invalid_argument("bipartition average needs 2 <= n <= 14");
  const int half = n / 2;

  BipartitionAverage out;
  out.by_size.assign(half, 0.0);
  std::vector<long> counts(half, 0);

  std::vector<int> pos_a, pos_b;
  const uint32_t dim = 1u << n;
  for (uint32_t mask = 1; mask + 1 < dim; ++mask) {
    const int s = std::popcount(mask);
    if (s > half) continue;
    if (2 * s == n && (mask & 1u) == 0) continue;  // half-size cuts counted once

    pos_a.clear();
    pos_b.clear();
    for (int j = 0; j < n; ++j) ((mask >> j) & 1u ? pos_a : pos_b).push_back(j);
    const int dim_a = 1 << s;
    const int dim_b = 1 << (n - s);

    Eigen::MatrixXcd m(dim_a, dim_b);
    for (uint32_t z = 0; z < dim; ++z) {
      int a = 0, b = 0;
      for (size_t i = 0; i < pos_a.size(); ++i) a |= static_cast<int>((z >> pos_a[i]) & 1u) << i;
      for (size_t i = 0; i < pos_b.size(); ++i) b |= static_cast<int>((z >> pos_b[i]) & 1u) << i;
      m(a, b) = psi[z];
    }

    Eigen::MatrixXcd rho = m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double ent = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double lambda = es.eigenvalues()(i);
      if (lambda > kWeightFloor) ent -= lambda * std::log2(lambda);
    }
    out.by_size[s - 1] += std::max(0.0, ent);
    ++counts[s - 1];
  }

  long total = 0;
  double sum = 0.0;
  for (int s = 0; s < half; ++s) {
    total += counts[s];
    sum += out.by_size[s];
    if (counts[s] > 0) out.by_size[s] /= static_cast<double>(counts[s]);
  }
  out.mean = sum / static_cast<double>(total);
  return out;
}

double participation_ratio(const StateVector& psi) {
  double quartic = 0.0;
  for (size_t z = 0; z < psi.dim(); ++z) {
    const double p = std::norm(psi[z]);
    quartic += p * p;
  }
  return 1.0 / quartic;
}

UnitaryEigensystem unitary_eigensystem(const Eigen::MatrixXcd& u, double phase_tol) {
  const Eigen::Index d = u.rows();
  if (u.cols() != d || d == 0) throw std::invalid_argument("square matrix required");

  // U is normal, so cos = (U + U^dag)/2 and sin = (U - U^dag)/(2i) commute and
  // share an eigenbasis; diagonalize cos, then split its clusters with sin.
  const Eigen::MatrixXcd h_cos = (u + u.adjoint()) * 0.5;
  const Eigen::MatrixXcd h_sin = (u - u.adjoint()) * cxd(0.0, -0.5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h_cos);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const Eigen::VectorXd cosv = es.eigenvalues();
  const Eigen::MatrixXcd& q = es.eigenvectors();
  const Eigen::MatrixXcd h_sin_q = h_sin * q;

  UnitaryEigensystem out;
  out.vectors.resize(d, d);
  out.phases.resize(d);

  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && cosv(end) - cosv(end - 1) <= phase_tol) ++end;
    const Eigen::Index k = end - start;
    if (k == 1) {
      out.vectors.col(start) = q.col(start);
      const double s = std::real(q.col(start).dot(h_sin_q.col(start)));
      out.phases[start] = std::atan2(s, cosv(start));
    } else {
      Eigen::MatrixXcd blk =
          q.middleCols(start, k).adjoint() * h_sin_q.middleCols(start, k);
      blk = (blk + blk.adjoint()) * 0.5;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(blk);
      if (es2.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
      out.vectors.middleCols(start, k) = q.middleCols(start, k) * es2.eigenvectors();
      const double c = cosv.segment(start, k).mean();
      for (Eigen::Index i = 0; i < k; ++i)
        out.phases[start + i] = std::atan2(es2.eigenvalues()(i), c);
    }
    start = end;
  }
  return out;
}

double annealing_entropy(const StateVector& psi, const UnitaryEigensystem& es,
                         double phase_tol) {
  const Eigen::Index d = es.vectors.rows();
  if (static_cast<size_t>(d) != psi.dim())
    throw std::invalid_argument("state/unitary dimension mismatch");
  const Eigen::Map<const Eigen::VectorXcd> v(psi.data(), d);
  const Eigen::VectorXcd coeff = es.vectors.adjoint() * v;

  std::vector<Eigen::Index> order(d);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return es.phases[a] < es.phases[b]; });

  std::vector<double> weights;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (i > 0 && es.phases[order[i]] - es.phases[order[i - 1]] > phase_tol) {
      weights.push_back(acc);
      acc = 0.0;
    }
    acc += std::norm(coeff(order[i]));
  }
  weights.push_back(acc);

  // the phase circle wraps at +-pi
  if (weights.size() > 1) {
    const double gap =
        es.phases[order[0]] + 2.0 * M_PI - es.phases[order[d - 1]];
    if (gap <= phase_tol) {
      weights[0] += weights.back();
      weights.pop_back();
    }
  }
  return shannon_bits(weights);
}

double annealing_entropy(const StateVector& psi, const Eigen::MatrixXcd& u,
                         double phase_tol) {
  return annealing_entropy(psi, unitary_eigensystem(u, phase_tol), phase_tol);
}

std::vector<DiagnosticSeries> trajectory_diagnostics(const Formula& f, const RunRecord& rec,
                                                     const std::vector<double>& etas,
                                                     const std::vector<Metric>& metrics) {
  if (rec.n_con <= 0) throw std::invalid_argument("empty run record");
  if (static_cast<int>(rec.angle_snapshots.size()) < rec.n_con ||
      static_cast<int>(rec.bias_snapshots.size()) < rec.n_con)
    throw std::invalid_argument("run record is missing iteration snapshots");

  const CostDiagonal c = build_cost_diagonal(f);
  std::optional<GroundSolution> ground;
  for (Metric m : metrics)
    if (m == Metric::Infidelity || m == Metric::ResidualEnergy) {
      ground = brute_force_ground(f);
      break;
    }

  std::vector<DiagnosticSeries> out;
  for (double eta : etas) {
    if (!(eta > 0.0) || eta > 1.0) throw std::invalid_argument("eta outside (0, 1]");
    const int idx = std::clamp(static_cast<int>(std::ceil(eta * rec.n_con)), 1, rec.n_con);
    const Schedule& s = rec.angle_snapshots[idx - 1];
    const BiasFields& h = rec.bias_snapshots[idx - 1];
    const int p = s.level();

    std::vector<DiagnosticSeries> series;
    for (Metric m : metrics) series.push_back({m, eta, {}});

    StateVector psi = prepare_initial_state(h);
    std::optional<UnitaryEigensystem> first_step;  // reused for k = 0 and k = 1
    for (int k = 0; k <= p; ++k) {
      if (k > 0) {
        apply_cost_phase(psi, s.gamma[k - 1], c);
        apply_mixer(psi, s.beta[k - 1], h);
      }
      for (size_t mi = 0; mi < metrics.size(); ++mi) {
        double value = 0.0;
        switch (metrics[mi]) {
          case Metric::EntanglementEntropy:
            value = entanglement_entropy_avg(psi).mean;
            break;
          case Metric::ParticipationRatio:
            value = participation_ratio(psi);
            break;
          case Metric::AnnealingEntropy: {
            // no unitary precedes k = 0; label that point with the first step's
            const int step = std::max(k, 1);
            if (step == 1 && !first_step)
              first_step =
                  unitary_eigensystem(build_step_unitary(s.gamma[0], s.beta[0], h, c));
            if (step == 1) {
              value = annealing_entropy(psi, *first_step);
            } else {
              value = annealing_entropy(
                  psi, build_step_unitary(s.gamma[step - 1], s.beta[step - 1], h, c));
            }
            break;
          }
          case Metric::Infidelity:
            value = infidelity(psi, ground->ground_masks);
            break;
          case Metric::ResidualEnergy:
            value = residual_energy(expectation_energy(psi, c), *ground);
            break;
        }
        series[mi].values.push_back(value);
      }
    }
    for (auto& sr : series) out.push_back(std::move(sr));
  }
  return out;
}

double success_probability(const std::vector<Verdict>& verdicts,
                           const std::vector<bool>& truths) {
  if (verdicts.size() != truths.size())
    throw std::invalid_argument("verdict/oracle length mismatch");
  if (verdicts.empty()) throw std::invalid_argument("empty ensemble");
  size_t hits = 0;
  for (size_t i = 0; i < verdicts.size(); ++i)
    if ((verdicts[i] == Verdict::Sat) == truths[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(verdicts.size());
}

double sat_probability(const std::vector<bool>& truths) {
  if (truths.empty()) throw std::invalid_argument("empty ensemble");
  const auto sat = static_cast<double>(std::count(truths.begin(), truths.end(), true));
  return sat / static_cast<double>(truths.size());
}

}  // namespace abq
