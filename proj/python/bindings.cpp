#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/complex.h>

#include "qadis/disorder.hpp"
#include "qadis/dynamics.hpp"
#include "qadis/ensemble.hpp"
#include "qadis/io.hpp"
#include "qadis/ising.hpp"
#include "qadis/solver.hpp"
#include "qadis/stats.hpp"
#include "qadis/sweep.hpp"

namespace py = pybind11;
using namespace qadis;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Desk-scale quantum annealing disorder toolkit";

    py::register_exception<CapabilityError>(m, "CapabilityError");
    py::register_exception<DataError>(m, "DataError");
    py::register_exception<ConsistencyError>(m, "ConsistencyError");
    py::register_exception<ConvergenceError>(m, "ConvergenceError");
    py::register_exception<UnfittableError>(m, "UnfittableError");

    py::class_<SpinConfiguration>(m, "SpinConfiguration")
        .def(py::init<std::uint32_t, int>(), py::arg("bits"), py::arg("n"))
        .def_readonly("bits", &SpinConfiguration::bits)
        .def_readonly("n", &SpinConfiguration::n)
        .def("spin", &SpinConfiguration::spin, py::arg("i"))
        .def("__eq__", [](const SpinConfiguration& a, const SpinConfiguration& b) {
            return a == b;
        })
        .def("__repr__", [](const SpinConfiguration& c) {
            std::string s(static_cast<std::size_t>(c.n), '0');
            for (int k = 0; k < c.n; ++k)
                if ((c.bits >> k) & 1u) s[static_cast<std::size_t>(k)] = '1';
            return "SpinConfiguration('" + s + "')";
        });

    py::class_<ProblemGraph>(m, "ProblemGraph")
        .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("n"),
             py::arg("edges"))
        .def_readonly("n", &ProblemGraph::n)
        .def_readonly("edges", &ProblemGraph::edges)
        .def("edge_count", &ProblemGraph::edge_count);

    py::class_<Coupler>(m, "Coupler")
        .def(py::init<int, int, double>(), py::arg("i"), py::arg("j"),
             py::arg("value"))
        .def_readwrite("i", &Coupler::i)
        .def_readwrite("j", &Coupler::j)
        .def_readwrite("value", &Coupler::value);

    py::class_<IsingProblem>(m, "IsingProblem")
        .def(py::init<ProblemGraph, std::vector<double>, std::vector<double>,
                      double>(),
             py::arg("graph"), py::arg("h"), py::arg("j"), py::arg("alpha") = 1.0)
        .def_readonly("graph", &IsingProblem::graph)
        .def_readonly("h", &IsingProblem::h)
        .def_readonly("j", &IsingProblem::j)
        .def_readwrite("alpha", &IsingProblem::alpha)
        .def_property_readonly("n", &IsingProblem::n)
        .def("active_sites", &IsingProblem::active_sites)
        .def("active_count", &IsingProblem::active_count)
        .def("within_hardware_range", &IsingProblem::within_hardware_range);

    m.def(
        "make_problem",
        [](int n, std::vector<double> h,
           const std::vector<std::tuple<int, int, double>>& couplers, double alpha) {
            std::vector<Coupler> cs;
            cs.reserve(couplers.size());
            for (const auto& [i, j, v] : couplers) cs.push_back({i, j, v});
            return make_problem(n, std::move(h), cs, alpha);
        },
        py::arg("n"), py::arg("h"), py::arg("couplers"), py::arg("alpha") = 1.0,
        "Build a problem from (i, j, value) coupler tuples.");

    m.def("reference_problem", &reference_problem, py::arg("alpha") = 1.0);

    py::class_<Spectrum::Level>(m, "SpectrumLevel")
        .def_readonly("energy", &Spectrum::Level::energy)
        .def_readonly("degeneracy", &Spectrum::Level::degeneracy)
        .def_readonly("representatives", &Spectrum::Level::representatives);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("levels", &Spectrum::levels)
        .def_readonly("n", &Spectrum::n)
        .def_readonly("active_count", &Spectrum::active_count)
        .def_readonly("alpha", &Spectrum::alpha)
        .def("ground_energy", &Spectrum::ground_energy)
        .def("max_energy", &Spectrum::max_energy);

    m.def("energy", &energy, py::arg("problem"), py::arg("config"));
    m.def("enumerate_spectrum", &enumerate_spectrum, py::arg("problem"),
          py::arg("merge_tol") = 1e-9, py::arg("rep_cap") = 16);
    m.def("low_energy_gap", &low_energy_gap, py::arg("spectrum"));

    py::class_<DisorderParams>(m, "DisorderParams")
        .def(py::init<double, double, bool, bool>(), py::arg("sigma_h"),
             py::arg("sigma_j"), py::arg("quantize") = false,
             py::arg("clamp") = false)
        .def_readwrite("sigma_h", &DisorderParams::sigma_h)
        .def_readwrite("sigma_j", &DisorderParams::sigma_j)
        .def_readwrite("quantize", &DisorderParams::quantize)
        .def_readwrite("clamp", &DisorderParams::clamp);

    py::class_<RealizationSeed>(m, "RealizationSeed")
        .def(py::init([](std::uint64_t master, std::uint64_t index) {
                 return RealizationSeed{master, index};
             }),
             py::arg("master_seed"), py::arg("realization_index"))
        .def_readwrite("master_seed", &RealizationSeed::master_seed)
        .def_readwrite("realization_index", &RealizationSeed::realization_index);

    m.def("perturb", &perturb, py::arg("problem"), py::arg("params"),
          py::arg("seed"));
    m.def("sigma_e", &sigma_e, py::arg("params"), py::arg("n_active"),
          py::arg("edge_count"));

    py::class_<GroundStateResult>(m, "GroundStateResult")
        .def_readonly("configs", &GroundStateResult::configs)
        .def_readonly("energy", &GroundStateResult::energy);

    m.def("ground_state", &ground_state, py::arg("problem"),
          py::arg("tie_tol") = 0.0);
    m.def("ground_state_naive", &ground_state_naive, py::arg("problem"),
          py::arg("tie_tol") = 0.0);

    py::class_<OutputDistribution>(m, "OutputDistribution")
        .def_readonly("counts", &OutputDistribution::counts)
        .def_readonly("total", &OutputDistribution::total)
        .def_readonly("n", &OutputDistribution::n)
        .def("probability", &OutputDistribution::probability, py::arg("bits"));

    py::class_<LevelDistribution::Entry>(m, "LevelEntry")
        .def_readonly("energy", &LevelDistribution::Entry::energy)
        .def_readonly("degeneracy", &LevelDistribution::Entry::degeneracy)
        .def_readonly("probability", &LevelDistribution::Entry::probability);

    py::class_<LevelDistribution>(m, "LevelDistribution")
        .def_readonly("entries", &LevelDistribution::entries)
        .def_readonly("total", &LevelDistribution::total)
        .def("mean_energy", &LevelDistribution::mean_energy);

    m.def("run_disorder_ensemble", &run_disorder_ensemble, py::arg("problem"),
          py::arg("params"), py::arg("realizations"), py::arg("master_seed"),
          py::arg("workers") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def("collapse_to_levels", &collapse_to_levels, py::arg("dist"),
          py::arg("ideal"), py::arg("spectrum"), py::arg("tol") = 1e-9);

    py::class_<AlignedDistributionPair>(m, "AlignedDistributionPair")
        .def(py::init<std::vector<double>, std::vector<double>,
                      std::vector<double>>(),
             py::arg("support"), py::arg("p"), py::arg("q"))
        .def_readonly("support", &AlignedDistributionPair::support)
        .def_readonly("p", &AlignedDistributionPair::p)
        .def_readonly("q", &AlignedDistributionPair::q);

    py::class_<BoltzmannFit>(m, "BoltzmannFit")
        .def_readonly("beta", &BoltzmannFit::beta)
        .def_readonly("mean_energy_residual", &BoltzmannFit::mean_energy_residual)
        .def_readonly("log_likelihood", &BoltzmannFit::log_likelihood)
        .def_readonly("support_size", &BoltzmannFit::support_size);

    m.def("kld", &kld, py::arg("pair"));
    m.def("jsd", &jsd, py::arg("pair"));
    m.def("boltzmann_distribution", &boltzmann_distribution, py::arg("spectrum"),
          py::arg("beta"));
    m.def("fit_beta", &fit_beta, py::arg("empirical"), py::arg("spectrum"));
    m.def("fit_beta_least_squares", &fit_beta_least_squares, py::arg("empirical"),
          py::arg("spectrum"));
    m.def("align", &align, py::arg("a"), py::arg("b"), py::arg("tol") = 1e-9);

    py::class_<Schedule>(m, "Schedule")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("a"),
             py::arg("b"))
        .def_static("published", &Schedule::published)
        .def_readonly("a_coeffs", &Schedule::a_coeffs)
        .def_readonly("b_coeffs", &Schedule::b_coeffs);

    py::class_<ScheduleValue>(m, "ScheduleValue")
        .def_readonly("a", &ScheduleValue::a)
        .def_readonly("b", &ScheduleValue::b);

    py::class_<QuantumState>(m, "QuantumState")
        .def_readonly("amplitudes", &QuantumState::amplitudes)
        .def_readonly("sites", &QuantumState::sites)
        .def_readonly("width", &QuantumState::width)
        .def("qubits", &QuantumState::qubits)
        .def("norm", &QuantumState::norm);

    py::class_<AnnealParams>(m, "AnnealParams")
        .def(py::init<>())
        .def_readwrite("tau", &AnnealParams::tau)
        .def_readwrite("action_override", &AnnealParams::action_override)
        .def_readwrite("step_tol", &AnnealParams::step_tol)
        .def_readwrite("angular_factor", &AnnealParams::angular_factor);

    m.def("eval_schedule", &eval_schedule, py::arg("schedule"), py::arg("s"));
    m.def("initial_state", &initial_state, py::arg("n"));
    m.def("apply_hamiltonian", &apply_hamiltonian, py::arg("problem"),
          py::arg("schedule"), py::arg("s"), py::arg("state"),
          py::arg("angular_factor") = 6.283185307179586476925286766559);
    m.def("evolve", &evolve, py::arg("problem"), py::arg("schedule"),
          py::arg("params"), py::call_guard<py::gil_scoped_release>());
    m.def("measure_distribution", &measure_distribution, py::arg("state"),
          py::arg("shots") = std::optional<std::uint64_t>{}, py::arg("seed") = 0);
    m.def("ground_overlap", &ground_overlap, py::arg("state"), py::arg("problem"));

    // File formats.
    auto io = m.def_submodule("io", "File format helpers");
    io.def("load_problem",
           [](const std::string& p) { return qadis::io::load_problem(p); });
    io.def("save_problem", [](const IsingProblem& pr, const std::string& p) {
        qadis::io::save_problem(pr, p);
    });
    io.def("save_spectrum_csv", [](const Spectrum& s, const std::string& p) {
        qadis::io::save_spectrum_csv(s, p);
    });
    io.def("save_distribution_csv",
           [](const OutputDistribution& d, const IsingProblem& pr,
              const std::string& p) { qadis::io::save_distribution_csv(d, pr, p); });
    io.def("load_distribution_csv", [](const std::string& p, int n) {
        return qadis::io::load_distribution_csv(p, n);
    });
    io.def("save_levels_csv", [](const LevelDistribution& l, const std::string& p) {
        qadis::io::save_levels_csv(l, p);
    });
    io.def("load_levels_csv",
           [](const std::string& p) { return qadis::io::load_levels_csv(p); });
    io.def("ingest_samples", [](const std::string& p, const IsingProblem& pr) {
        return qadis::io::ingest_samples(p, pr);
    });
    io.def("save_samples", [](const OutputDistribution& d, const std::string& p) {
        qadis::io::save_samples(d, p);
    });

    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_readwrite("problem", &SweepConfig::problem)
        .def_readwrite("alpha_grid", &SweepConfig::alpha_grid)
        .def_readwrite("disorder_grid", &SweepConfig::disorder_grid)
        .def_readwrite("quantize", &SweepConfig::quantize)
        .def_readwrite("clamp", &SweepConfig::clamp)
        .def_readwrite("realizations", &SweepConfig::realizations)
        .def_readwrite("master_seed", &SweepConfig::master_seed)
        .def_readwrite("workers", &SweepConfig::workers)
        .def_property(
            "out_dir",
            [](const SweepConfig& c) { return c.out_dir.string(); },
            [](SweepConfig& c, const std::string& p) { c.out_dir = p; });

    py::class_<SweepReport::Cell>(m, "SweepCell")
        .def_readonly("index", &SweepReport::Cell::index)
        .def_readonly("alpha", &SweepReport::Cell::alpha)
        .def_readonly("sigma_h", &SweepReport::Cell::sigma_h)
        .def_readonly("sigma_j", &SweepReport::Cell::sigma_j)
        .def_readonly("seed", &SweepReport::Cell::seed)
        .def_readonly("ok", &SweepReport::Cell::ok)
        .def_readonly("error", &SweepReport::Cell::error)
        .def_readonly("ground_probability", &SweepReport::Cell::ground_probability)
        .def_readonly("beta", &SweepReport::Cell::beta)
        .def_readonly("jsd_to_fit", &SweepReport::Cell::jsd_to_fit);

    py::class_<SweepReport>(m, "SweepReport")
        .def_readonly("ok", &SweepReport::ok)
        .def_readonly("cells", &SweepReport::cells)
        .def_property_readonly("manifest_path", [](const SweepReport& r) {
            return r.manifest_path.string();
        });

    m.def("load_sweep_config",
          [](const std::string& p) { return load_sweep_config(p); });
    m.def("run_sweep", &run_sweep, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<CompareReport::Row>(m, "CompareRow")
        .def_readonly("energy", &CompareReport::Row::energy)
        .def_readonly("degeneracy", &CompareReport::Row::degeneracy)
        .def_readonly("p_a", &CompareReport::Row::p_a)
        .def_readonly("p_b", &CompareReport::Row::p_b);

    py::class_<CompareReport>(m, "CompareReport")
        .def_readonly("jsd", &CompareReport::jsd)
        .def_readonly("rows", &CompareReport::rows)
        .def_readonly("fit_a", &CompareReport::fit_a)
        .def_readonly("fit_b", &CompareReport::fit_b);

    m.def("compare", &compare, py::arg("dist_a"), py::arg("dist_b"),
          py::arg("ideal"), py::arg("spectrum"));
    m.def("render_compare_report", &render_compare_report, py::arg("report"));
}
