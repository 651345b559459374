// Python bindings for the abq core. Thin: structs map to attribute classes,
// free functions keep their C++ names, JSON crosses the boundary as strings.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "abq/diagnostics.hpp"
#include "abq/harness.hpp"
#include "abq/io.hpp"
#include "abq/ofab.hpp"
#include "abq/sat.hpp"
#include "abq/statevector.hpp"
#include "abq/variational.hpp"

namespace py = pybind11;
using namespace abq;

namespace {

py::array_t<cxd> amplitudes_array(const StateVector& psi) {
  py::array_t<cxd> out(static_cast<py::ssize_t>(psi.dim()));
  std::copy(psi.data(), psi.data() + psi.dim(), out.mutable_data());
  return out;
}

Formula make_formula(int n, const std::vector<Clause>& clauses) {
  Formula f{n, clauses};
  validate(f);
  return f;
}

}  // namespace

PYBIND11_MODULE(_abq, m) {
  m.doc() = "statevector simulation of QAOA / ab-QAOA on random 1-3-SAT+ problems";
#ifdef ABQ_VERSION_INFO
  m.attr("__version__") = ABQ_VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif

  // ---- sat ----
  py::class_<Formula>(m, "Formula")
      .def(py::init(&make_formula), py::arg("n"), py::arg("clauses"))
      .def_readonly("n", &Formula::n)
      .def_readonly("clauses", &Formula::clauses)
      .def_property_readonly("num_clauses", &Formula::num_clauses)
      .def("__repr__", [](const Formula& f) {
        return "Formula(n=" + std::to_string(f.n) +
               ", m=" + std::to_string(f.num_clauses()) + ")";
      });

  py::class_<GroundSolution>(m, "GroundSolution")
      .def_readonly("energy", &GroundSolution::energy)
      .def_readonly("ground_masks", &GroundSolution::ground_masks)
      .def_readonly("min_violated", &GroundSolution::min_violated);

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<uint64_t>(), py::arg("seed"))
      .def("next_u64", &RngStream::next_u64)
      .def("next_double", &RngStream::next_double)
      .def("next_sign", &RngStream::next_sign)
      .def("next_normal", &RngStream::next_normal);

  m.def("derive_seed", [](const std::vector<uint64_t>& keys) {
    uint64_t h = 0x853c49e6748fea9bULL;
    for (uint64_t k : keys) h = mix64(h ^ mix64(k));
    return h;
  });
  m.def("max_clause_count", &max_clause_count);
  m.def("clause_count_for_density",
        py::overload_cast<int, double>(&clause_count_for_density), py::arg("n"),
        py::arg("alpha"));
  m.def(
      "generate_instance",
      [](int n, double alpha, uint64_t seed) {
        RngStream rng(seed);
        return generate_instance(n, alpha, rng);
      },
      py::arg("n"), py::arg("alpha"), py::arg("seed"));
  m.def(
      "generate_instance_m",
      [](int n, int mm, uint64_t seed) {
        RngStream rng(seed);
        return generate_instance_m(n, mm, rng);
      },
      py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("penalty_energy", &penalty_energy);
  m.def("violated_count", &violated_count);
  m.def("brute_force_ground", &brute_force_ground);
  m.def("sat_oracle", py::overload_cast<const Formula&>(&sat_oracle));
  m.def("assignment_from_mask", &assignment_from_mask);
  m.def("mask_from_assignment", &mask_from_assignment);
  m.def(
      "approximation_error",
      [](const Formula& f) { return approximation_error(f); }, py::arg("f"));

  // ---- statevector ----
  py::class_<CostDiagonal>(m, "CostDiagonal")
      .def_readonly("n", &CostDiagonal::n)
      .def_readonly("energies", &CostDiagonal::energies)
      .def("min_energy", &CostDiagonal::min_energy)
      .def("max_energy", &CostDiagonal::max_energy);

  py::class_<Schedule>(m, "Schedule")
      .def(py::init([](std::vector<double> gamma, std::vector<double> beta) {
             return Schedule{std::move(gamma), std::move(beta)};
           }),
           py::arg("gamma"), py::arg("beta"))
      .def_readwrite("gamma", &Schedule::gamma)
      .def_readwrite("beta", &Schedule::beta)
      .def_property_readonly("level", &Schedule::level);

  py::class_<StateVector>(m, "StateVector")
      .def(py::init<int>(), py::arg("n"))
      .def_property_readonly("num_qubits", &StateVector::num_qubits)
      .def_property_readonly("dim", &StateVector::dim)
      .def_property_readonly("amplitudes", &amplitudes_array)
      .def("norm_sq", &StateVector::norm_sq);

  m.def("build_cost_diagonal", &build_cost_diagonal);
  m.def("prepare_initial_state", &prepare_initial_state);
  m.def("apply_cost_phase", &apply_cost_phase);
  m.def("apply_mixer", &apply_mixer);
  m.def("evolve", &evolve, py::arg("psi"), py::arg("schedule"), py::arg("h"),
        py::arg("cost"));
  m.def("expectation_energy", &expectation_energy);
  m.def("expectation_z", &expectation_z);
  m.def("expectation_z_all", &expectation_z_all);
  m.def("build_step_unitary", &build_step_unitary);

  // ---- variational ----
  py::enum_<Algorithm>(m, "Algorithm")
      .value("Qaoa", Algorithm::Qaoa)
      .value("AbQaoa", Algorithm::AbQaoa);
  py::enum_<InitStrategy>(m, "InitStrategy")
      .value("Tqa", InitStrategy::Tqa)
      .value("Fourier", InitStrategy::Fourier);
  py::enum_<GradientMethod>(m, "GradientMethod")
      .value("CentralDifference", GradientMethod::CentralDifference)
      .value("Adjoint", GradientMethod::Adjoint);
  py::enum_<Verdict>(m, "Verdict")
      .value("Sat", Verdict::Sat)
      .value("Unsat", Verdict::Unsat);

  py::class_<AdamParams>(m, "AdamParams")
      .def(py::init<>())
      .def_readwrite("step", &AdamParams::step)
      .def_readwrite("beta1", &AdamParams::beta1)
      .def_readwrite("beta2", &AdamParams::beta2)
      .def_readwrite("epsilon", &AdamParams::epsilon);

  py::class_<OptimizerConfig>(m, "OptimizerConfig")
      .def(py::init<>())
      .def_readwrite("bias_learning_rate", &OptimizerConfig::bias_learning_rate)
      .def_readwrite("adam", &OptimizerConfig::adam)
      .def_readwrite("fd_step", &OptimizerConfig::fd_step)
      .def_readwrite("gradient", &OptimizerConfig::gradient)
      .def_readwrite("convergence_tol", &OptimizerConfig::convergence_tol)
      .def_readwrite("convergence_window", &OptimizerConfig::convergence_window)
      .def_readwrite("max_iterations", &OptimizerConfig::max_iterations)
      .def_readwrite("samples", &OptimizerConfig::samples)
      .def_readwrite("delta_t", &OptimizerConfig::delta_t)
      .def_readwrite("xi", &OptimizerConfig::xi)
      .def_readwrite("fourier_levels", &OptimizerConfig::fourier_levels)
      .def_readwrite("store_snapshots", &OptimizerConfig::store_snapshots)
      .def_readwrite("zero_bias_init", &OptimizerConfig::zero_bias_init);

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("energy_trace", &RunRecord::energy_trace)
      .def_readonly("n_con", &RunRecord::n_con)
      .def_readonly("best_energy", &RunRecord::best_energy)
      .def_readonly("best_iteration", &RunRecord::best_iteration)
      .def_readonly("best_schedule", &RunRecord::best_schedule)
      .def_readonly("best_bias", &RunRecord::best_bias)
      .def_property_readonly(
          "final_state", [](const RunRecord& r) { return r.final_state; });

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("best", &RunResult::best)
      .def_readonly("best_sample", &RunResult::best_sample)
      .def_readonly("sample_energies", &RunResult::sample_energies)
      .def_readonly("fourier_level_energies", &RunResult::fourier_level_energies);

  m.def("gradient", &gradient);
  m.def("gradient_central_difference", &gradient_central_difference);
  m.def("gradient_adjoint", &gradient_adjoint);
  m.def("update_bias", &update_bias);
  m.def("run",
        py::overload_cast<const Formula&, int, Algorithm, InitStrategy,
                          const OptimizerConfig&, uint64_t>(&run),
        py::arg("f"), py::arg("p"), py::arg("algo"), py::arg("init"),
        py::arg("config"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("decide_sat", &decide_sat, py::arg("best_energy"), py::arg("e_th") = 0.5);

  // ---- ofab ----
  py::enum_<TiePolicy>(m, "TiePolicy")
      .value("Zero", TiePolicy::Zero)
      .value("One", TiePolicy::One);

  py::class_<OfabConfig>(m, "OfabConfig")
      .def(py::init<>())
      .def_readwrite("p", &OfabConfig::p)
      .def_readwrite("samples", &OfabConfig::samples)
      .def_readwrite("delta_t", &OfabConfig::delta_t)
      .def_readwrite("bias_learning_rate", &OfabConfig::bias_learning_rate)
      .def_readwrite("tie", &OfabConfig::tie);

  py::class_<OfabLevel>(m, "OfabLevel")
      .def_readonly("level", &OfabLevel::level)
      .def_readonly("sample_energies", &OfabLevel::sample_energies)
      .def_readonly("sample_expectations", &OfabLevel::sample_expectations)
      .def_readonly("best_energy", &OfabLevel::best_energy)
      .def_readonly("best_sample", &OfabLevel::best_sample);

  py::class_<OfabResult>(m, "OfabResult")
      .def_readonly("levels", &OfabResult::levels)
      .def_readonly("energy", &OfabResult::energy)
      .def_readonly("assignment", &OfabResult::assignment)
      .def_readonly("best_sample", &OfabResult::best_sample)
      .def_readonly("state_preparations", &OfabResult::state_preparations)
      .def_readonly("layers_per_sample", &OfabResult::layers_per_sample);

  m.def("bias_state", &bias_state, py::arg("h"), py::arg("tie") = TiePolicy::Zero);
  m.def(
      "opt_free_run",
      [](const Formula& f, const OfabConfig& cfg, uint64_t seed) {
        RngStream rng(seed);
        return opt_free_run(f, cfg, rng);
      },
      py::arg("f"), py::arg("config"), py::arg("seed"),
      py::call_guard<py::gil_scoped_release>());

  // ---- diagnostics ----
  py::enum_<Metric>(m, "Metric")
      .value("EntanglementEntropy", Metric::EntanglementEntropy)
      .value("ParticipationRatio", Metric::ParticipationRatio)
      .value("AnnealingEntropy", Metric::AnnealingEntropy)
      .value("Infidelity", Metric::Infidelity)
      .value("ResidualEnergy", Metric::ResidualEnergy);

  py::class_<BipartitionAverage>(m, "BipartitionAverage")
      .def_readonly("mean", &BipartitionAverage::mean)
      .def_readonly("by_size", &BipartitionAverage::by_size);

  py::class_<DiagnosticSeries>(m, "DiagnosticSeries")
      .def_readonly("metric", &DiagnosticSeries::metric)
      .def_readonly("eta", &DiagnosticSeries::eta)
      .def_readonly("values", &DiagnosticSeries::values);

  m.def("residual_energy",
        py::overload_cast<double, const Formula&>(&residual_energy));
  m.def("infidelity", &infidelity);
  m.def("entanglement_entropy_avg", &entanglement_entropy_avg,
        py::call_guard<py::gil_scoped_release>());
  m.def("participation_ratio", &participation_ratio);
  m.def("annealing_entropy",
        py::overload_cast<const StateVector&, const Eigen::MatrixXcd&, double>(
            &annealing_entropy),
        py::arg("psi"), py::arg("u"), py::arg("phase_tol") = 1e-8,
        py::call_guard<py::gil_scoped_release>());
  m.def("trajectory_diagnostics", &trajectory_diagnostics, py::arg("f"),
        py::arg("record"), py::arg("etas"), py::arg("metrics"),
        py::call_guard<py::gil_scoped_release>());
  m.def("success_probability", &success_probability);
  m.def("sat_probability", &sat_probability);

  // ---- harness ----
  py::enum_<AlgoKind>(m, "AlgoKind")
      .value("Qaoa", AlgoKind::Qaoa)
      .value("AbQaoa", AlgoKind::AbQaoa)
      .value("Ofab", AlgoKind::Ofab);
  py::enum_<ProblemKind>(m, "ProblemKind")
      .value("Decision", ProblemKind::Decision)
      .value("Max", ProblemKind::Max);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("n_list", &ExperimentConfig::n_list)
      .def_readwrite("alphas", &ExperimentConfig::alphas)
      .def_readwrite("levels", &ExperimentConfig::levels)
      .def_readwrite("algorithms", &ExperimentConfig::algorithms)
      .def_readwrite("init", &ExperimentConfig::init)
      .def_readwrite("instances", &ExperimentConfig::instances)
      .def_readwrite("opt", &ExperimentConfig::opt)
      .def_readwrite("ofab", &ExperimentConfig::ofab)
      .def_readwrite("problem", &ExperimentConfig::problem)
      .def_readwrite("e_th", &ExperimentConfig::e_th)
      .def_readwrite("if_threshold", &ExperimentConfig::if_threshold)
      .def_readwrite("threads", &ExperimentConfig::threads)
      .def_readwrite("out_dir", &ExperimentConfig::out_dir);

  py::class_<SweepCell>(m, "SweepCell")
      .def_readonly("algo", &SweepCell::algo)
      .def_readonly("n", &SweepCell::n)
      .def_readonly("alpha", &SweepCell::alpha)
      .def_readonly("m", &SweepCell::m)
      .def_readonly("p", &SweepCell::p)
      .def_readonly("instances", &SweepCell::instances)
      .def_readonly("failures", &SweepCell::failures)
      .def_readonly("p_sat", &SweepCell::p_sat)
      .def_readonly("p_succ", &SweepCell::p_succ)
      .def_readonly("de_mean", &SweepCell::de_mean)
      .def_readonly("de_stderr", &SweepCell::de_stderr)
      .def_readonly("if_mean", &SweepCell::if_mean)
      .def_readonly("if_stderr", &SweepCell::if_stderr)
      .def_readonly("ncon_mean", &SweepCell::ncon_mean)
      .def_readonly("cost_mean", &SweepCell::cost_mean);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("cells", &SweepResult::cells)
      .def_readonly("total_failures", &SweepResult::total_failures);

  m.def(
      "make_ensemble",
      [](int n, double alpha, int count, uint64_t seed) {
        return make_ensemble(n, alpha, count, seed).instances;
      },
      py::arg("n"), py::arg("alpha"), py::arg("count"), py::arg("seed"));
  m.def("sweep", &sweep, py::call_guard<py::gil_scoped_release>());
  m.def("sweep_csv", [](const SweepResult& res) {
    CsvTable t = sweep_table(res);
    std::string out;
    for (size_t i = 0; i < t.header.size(); ++i)
      out += (i ? "," : "") + t.header[i];
    out += "\n";
    for (const auto& row : t.rows) {
      for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
      out += "\n";
    }
    return out;
  });
  m.def("config_to_json",
        [](const ExperimentConfig& cfg) { return config_to_json(cfg).dump(2); });
  m.def("config_from_json", [](const std::string& text) {
    return config_from_json(nlohmann::json::parse(text));
  });
  m.def("instance_to_json",
        [](const Formula& f) { return instance_to_json(f).dump(); });
  m.def("instance_from_json", [](const std::string& text) {
    return instance_from_json(nlohmann::json::parse(text));
  });
}
