// qadis command-line front end.
//
// Subcommands:
//   spectrum  enumerate a problem's level structure and export it
//   sweep     run disorder ensembles over an (alpha, sigma) grid
//   anneal    propagate the annealing schedule and measure the output
//   fit       fit an inverse temperature to a distribution file
//   compare   compare two distribution files on one spectrum
//   ingest    convert a sample dump into a distribution file
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 compute error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qadis/dynamics.hpp"
#include "qadis/ensemble.hpp"
#include "qadis/io.hpp"
#include "qadis/solver.hpp"
#include "qadis/sweep.hpp"

namespace fs = std::filesystem;

namespace {

struct ProblemOptions {
    std::string problem_file;
    bool reference = false;
    double alpha = 1.0;
};

void add_problem_options(CLI::App* cmd, ProblemOptions& opts) {
    auto* file = cmd->add_option("--problem", opts.problem_file,
                                 "problem file (JSON)");
    auto* ref = cmd->add_flag("--reference", opts.reference,
                              "use the built-in 10-qubit reference problem");
    cmd->add_option("--alpha", opts.alpha, "global scale alpha")
        ->check(CLI::PositiveNumber);
    file->excludes(ref);
}

qadis::IsingProblem resolve_problem(const ProblemOptions& opts) {
    qadis::IsingProblem p;
    if (opts.reference) {
        p = qadis::reference_problem(opts.alpha);
    } else {
        if (opts.problem_file.empty())
            throw CLI::ValidationError("problem",
                                       "need --problem <file> or --reference");
        p = qadis::io::load_problem(opts.problem_file);
        p.alpha = opts.alpha;
    }
    if (!p.within_hardware_range())
        std::fprintf(stderr,
                     "warning: scaled parameters leave the tuning ranges "
                     "alpha*h in [-2,2], alpha*j in [-1,1]\n");
    return p;
}

int run_spectrum(const ProblemOptions& popts, double merge_tol,
                 const std::string& out) {
    const auto problem = resolve_problem(popts);
    const auto spectrum = qadis::enumerate_spectrum(problem, merge_tol);
    std::printf("problem: n=%d, active=%d, alpha=%s\n", problem.n(),
                spectrum.active_count, qadis::io::format_double(problem.alpha).c_str());
    std::printf("levels: %zu, ground=%s, gap=%s\n", spectrum.levels.size(),
                qadis::io::format_double(spectrum.ground_energy()).c_str(),
                spectrum.levels.size() > 1
                    ? qadis::io::format_double(qadis::low_energy_gap(spectrum)).c_str()
                    : "n/a");
    const std::size_t shown = std::min<std::size_t>(spectrum.levels.size(), 10);
    for (std::size_t k = 0; k < shown; ++k)
        std::printf("  E=%-14.6g g=%llu\n", spectrum.levels[k].energy,
                    static_cast<unsigned long long>(spectrum.levels[k].degeneracy));
    if (shown < spectrum.levels.size())
        std::printf("  ... %zu more levels\n", spectrum.levels.size() - shown);
    if (!out.empty()) {
        qadis::io::save_spectrum_csv(spectrum, out);
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_dir,
                  std::optional<std::uint64_t> seed, std::optional<int> workers) {
    qadis::SweepConfig config = qadis::load_sweep_config(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (seed) config.master_seed = *seed;
    if (workers) config.workers = *workers;
    const qadis::SweepReport report = qadis::run_sweep(config);
    for (const auto& cell : report.cells) {
        if (cell.ok)
            std::printf("cell %zu: alpha=%g sigma=(%g, %g) ground_p=%.6f%s\n",
                        cell.index, cell.alpha, cell.sigma_h, cell.sigma_j,
                        cell.ground_probability,
                        cell.beta ? (" beta=" + qadis::io::format_double(*cell.beta))
                                        .c_str()
                                  : " beta=unfittable");
        else
            std::printf("cell %zu: alpha=%g sigma=(%g, %g) FAILED: %s\n", cell.index,
                        cell.alpha, cell.sigma_h, cell.sigma_j, cell.error.c_str());
    }
    std::printf("manifest: %s\n", report.manifest_path.string().c_str());
    if (!report.ok) {
        std::fprintf(stderr, "sweep finished with failures\n");
        return 3;
    }
    return 0;
}

int run_anneal(const ProblemOptions& popts, std::optional<double> action,
               std::optional<double> tau, double angular_factor, double step_tol,
               std::optional<std::uint64_t> shots, std::uint64_t seed,
               const std::string& schedule_file, const std::string& out,
               const std::string& dump_state) {
    const auto problem = resolve_problem(popts);
    qadis::AnnealParams params;
    params.angular_factor = angular_factor;
    params.step_tol = step_tol;
    if (action)
        params.action_override = *action;
    else if (tau)
        params.tau = *tau;
    else
        throw CLI::ValidationError("anneal", "need --action or --tau");

    const auto schedule = schedule_file.empty()
                              ? qadis::Schedule::published()
                              : qadis::io::load_schedule(schedule_file);
    const auto state = qadis::evolve(problem, schedule, params);
    const double overlap = qadis::ground_overlap(state, problem);
    std::printf("qubits: %d, ground overlap: %.8f\n", state.qubits(), overlap);
    const auto dist = qadis::measure_distribution(state, shots, seed);
    if (!out.empty()) {
        qadis::io::save_distribution_csv(dist, problem, out);
        std::printf("wrote %s\n", out.c_str());
    }
    if (!dump_state.empty()) {
        qadis::io::save_state_csv(state, dump_state);
        std::printf("wrote %s\n", dump_state.c_str());
    }
    return 0;
}

int run_fit(const ProblemOptions& popts, const std::string& dist_path,
            double merge_tol, const std::string& out) {
    const auto problem = resolve_problem(popts);
    const auto spectrum = qadis::enumerate_spectrum(problem, merge_tol);
    const auto dist = qadis::io::load_distribution_csv(dist_path, problem.n());
    const auto levels = qadis::collapse_to_levels(dist, problem, spectrum);
    const auto fit = qadis::fit_beta(levels, spectrum);
    std::printf("beta: %s\n", qadis::io::format_double(fit.beta).c_str());
    std::printf("log_likelihood: %s\n",
                qadis::io::format_double(fit.log_likelihood).c_str());
    std::printf("mean_energy_residual: %s\n",
                qadis::io::format_double(fit.mean_energy_residual).c_str());
    std::printf("support_size: %zu\n", fit.support_size);
    if (!out.empty()) {
        qadis::io::save_fit_report(fit, out);
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

int run_compare(const ProblemOptions& popts, const std::string& a_path,
                const std::string& b_path, double merge_tol,
                const std::string& out) {
    const auto problem = resolve_problem(popts);
    const auto spectrum = qadis::enumerate_spectrum(problem, merge_tol);
    const auto dist_a = qadis::io::load_distribution_csv(a_path, problem.n());
    const auto dist_b = qadis::io::load_distribution_csv(b_path, problem.n());
    const auto report = qadis::compare(dist_a, dist_b, problem, spectrum);
    std::fputs(qadis::render_compare_report(report).c_str(), stdout);
    if (!out.empty()) {
        std::string csv = "energy,degeneracy,p_a,p_b\n";
        for (const auto& row : report.rows)
            csv += qadis::io::format_double(row.energy) + "," +
                   std::to_string(row.degeneracy) + "," +
                   qadis::io::format_double(row.p_a) + "," +
                   qadis::io::format_double(row.p_b) + "\n";
        std::ofstream f(out, std::ios::binary);
        if (!f) throw qadis::DataError("cannot write " + out);
        f << csv;
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

int run_ingest(const ProblemOptions& popts, const std::string& samples_path,
               const std::string& out) {
    const auto problem = resolve_problem(popts);
    const auto dist = qadis::io::ingest_samples(samples_path, problem);
    std::printf("ingested %llu samples over %zu configurations\n",
                static_cast<unsigned long long>(dist.total), dist.counts.size());
    if (!out.empty()) {
        qadis::io::save_distribution_csv(dist, problem, out);
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Desk-scale quantum annealing disorder toolkit"};
    app.require_subcommand(1);

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "enumerate and export levels");
    ProblemOptions spec_p;
    add_problem_options(spectrum_cmd, spec_p);
    double spec_merge_tol = 1e-9;
    std::string spec_out;
    spectrum_cmd->add_option("--merge-tol", spec_merge_tol, "level merge tolerance");
    spectrum_cmd->add_option("--out", spec_out, "spectrum CSV path");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run disorder ensembles over a grid");
    std::string sweep_config;
    std::string sweep_out;
    std::optional<std::uint64_t> sweep_seed;
    std::optional<int> sweep_workers;
    sweep_cmd->add_option("--config", sweep_config, "sweep config file (JSON)")
        ->required();
    sweep_cmd->add_option("--out", sweep_out, "output directory (overrides config)");
    sweep_cmd->add_option("--seed", sweep_seed, "master seed (overrides config)");
    sweep_cmd->add_option("--workers", sweep_workers,
                          "worker threads (0 = hardware)");

    // anneal
    auto* anneal_cmd = app.add_subcommand("anneal", "schedule propagation run");
    ProblemOptions anneal_p;
    add_problem_options(anneal_cmd, anneal_p);
    std::optional<double> anneal_action;
    std::optional<double> anneal_tau;
    double anneal_angular = 6.283185307179586476925286766559;
    double anneal_step_tol = 1e-6;
    std::optional<std::uint64_t> anneal_shots;
    std::uint64_t anneal_seed = 0;
    std::string anneal_schedule;
    std::string anneal_out;
    std::string anneal_dump;
    anneal_cmd->add_option("--action", anneal_action,
                           "dimensionless action tau*B(1)*angular_factor");
    anneal_cmd->add_option("--tau", anneal_tau, "annealing time in microseconds");
    anneal_cmd->add_option("--angular-factor", anneal_angular,
                           "GHz-to-angular-frequency factor (default 2*pi)");
    anneal_cmd->add_option("--step-tol", anneal_step_tol, "integrator tolerance");
    anneal_cmd->add_option("--shots", anneal_shots,
                           "multinomial shots (exact Born mode when absent)");
    anneal_cmd->add_option("--seed", anneal_seed, "measurement seed");
    anneal_cmd->add_option("--schedule", anneal_schedule,
                           "schedule override file (JSON)");
    anneal_cmd->add_option("--out", anneal_out, "distribution CSV path");
    anneal_cmd->add_option("--dump-state", anneal_dump, "state dump CSV path");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "Boltzmann fit of a distribution");
    ProblemOptions fit_p;
    add_problem_options(fit_cmd, fit_p);
    std::string fit_dist;
    double fit_merge_tol = 1e-9;
    std::string fit_out;
    fit_cmd->add_option("--dist", fit_dist, "distribution CSV")->required();
    fit_cmd->add_option("--merge-tol", fit_merge_tol, "level merge tolerance");
    fit_cmd->add_option("--out", fit_out, "fit report path (JSON)");

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "compare two distributions");
    ProblemOptions compare_p;
    add_problem_options(compare_cmd, compare_p);
    std::string compare_a;
    std::string compare_b;
    double compare_merge_tol = 1e-9;
    std::string compare_out;
    compare_cmd->add_option("--a", compare_a, "first distribution CSV")->required();
    compare_cmd->add_option("--b", compare_b, "second distribution CSV")->required();
    compare_cmd->add_option("--merge-tol", compare_merge_tol,
                            "level merge tolerance");
    compare_cmd->add_option("--out", compare_out, "per-level table CSV path");

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "sample dump -> distribution");
    ProblemOptions ingest_p;
    add_problem_options(ingest_cmd, ingest_p);
    std::string ingest_samples;
    std::string ingest_out;
    ingest_cmd->add_option("--samples", ingest_samples, "sample file")->required();
    ingest_cmd->add_option("--out", ingest_out, "distribution CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? 0 : 1;
    }

    try {
        if (spectrum_cmd->parsed())
            return run_spectrum(spec_p, spec_merge_tol, spec_out);
        if (sweep_cmd->parsed())
            return run_sweep_cmd(sweep_config, sweep_out, sweep_seed, sweep_workers);
        if (anneal_cmd->parsed())
            return run_anneal(anneal_p, anneal_action, anneal_tau, anneal_angular,
                              anneal_step_tol, anneal_shots, anneal_seed,
                              anneal_schedule, anneal_out, anneal_dump);
        if (fit_cmd->parsed())
            return run_fit(fit_p, fit_dist, fit_merge_tol, fit_out);
        if (compare_cmd->parsed())
            return run_compare(compare_p, compare_a, compare_b, compare_merge_tol,
                               compare_out);
        if (ingest_cmd->parsed())
            return run_ingest(ingest_p, ingest_samples, ingest_out);
        std::fprintf(stderr, "no subcommand\n");
        return 1;
    } catch (const CLI::ValidationError& err) {
        std::fprintf(stderr, "usage error: %s\n", err.what());
        return 1;
    } catch (const qadis::DataError& err) {
        std::fprintf(stderr, "data error: %s\n", err.what());
        return 2;
    } catch (const qadis::ConsistencyError& err) {
        std::fprintf(stderr, "data error: %s\n", err.what());
        return 2;
    } catch (const std::invalid_argument& err) {
        std::fprintf(stderr, "usage error: %s\n", err.what());
        return 1;
    } catch (const qadis::UnfittableError& err) {
        std::fprintf(stderr, "compute error: %s\n", err.what());
        return 3;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "compute error: %s\n", err.what());
        return 3;
    }
}
