#include "qadis/sweep.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qadis/dynamics.hpp"
#include "qadis/io.hpp"

namespace qadis {

using nlohmann::json;

namespace {

std::string cell_tag(std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03zu", index);
    return buf;
}

json problem_json(const IsingProblem& problem) {
    json j;
    j["n"] = problem.n();
    j["alpha"] = problem.alpha;
    j["h"] = problem.h;
    json couplers = json::array();
    for (std::size_t e = 0; e < problem.graph.edges.size(); ++e)
        couplers.push_back({{"i", problem.graph.edges[e].first},
                            {"j", problem.graph.edges[e].second},
                            {"value", problem.j[e]}});
    j["couplers"] = std::move(couplers);
    return j;
}

IsingProblem problem_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    const double alpha = j.value("alpha", 1.0);
    std::vector<double> h = j.at("h").get<std::vector<double>>();
    std::vector<Coupler> couplers;
    for (const auto& c : j.at("couplers"))
        couplers.push_back({c.at("i").get<int>(), c.at("j").get<int>(),
                            c.at("value").get<double>()});
    return make_problem(n, std::move(h), couplers, alpha);
}

}  // namespace

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& err) {
        throw DataError(path.string() + ": " + err.what());
    }

    SweepConfig config;
    try {
        if (j.contains("problem")) {
            config.problem = problem_from_json(j.at("problem"));
        } else if (j.contains("problem_file")) {
            const std::filesystem::path p = j.at("problem_file").get<std::string>();
            config.problem =
                io::load_problem(p.is_absolute() ? p : path.parent_path() / p);
        } else if (j.contains("reference_alpha")) {
            // Convenience: the built-in reference problem at a given alpha
            // (alpha_grid still rescales it per cell).
            config.problem = reference_problem(j.at("reference_alpha").get<double>());
        } else {
            throw DataError(path.string() +
                            ": config needs 'problem', 'problem_file' or "
                            "'reference_alpha'");
        }
        if (j.contains("alpha_grid"))
            config.alpha_grid = j.at("alpha_grid").get<std::vector<double>>();
        if (j.contains("disorder_grid")) {
            config.disorder_grid.clear();
            for (const auto& pair : j.at("disorder_grid")) {
                if (!pair.is_array() || pair.size() != 2)
                    throw DataError(path.string() +
                                    ": disorder_grid entries are [sigma_h, sigma_j]");
                config.disorder_grid.emplace_back(pair[0].get<double>(),
                                                  pair[1].get<double>());
            }
        }
        config.quantize = j.value("quantize", false);
        config.clamp = j.value("clamp", false);
        config.realizations = j.value("realizations", std::uint64_t{100000});
        config.master_seed = j.value("master_seed", std::uint64_t{1});
        config.workers = j.value("workers", 0);
        if (j.contains("dynamics")) {
            SweepConfig::Dynamics dyn;
            const auto& d = j.at("dynamics");
            dyn.actions = d.at("actions").get<std::vector<double>>();
            dyn.angular_factor = d.value("angular_factor", dyn.angular_factor);
            dyn.step_tol = d.value("step_tol", dyn.step_tol);
            config.dynamics = std::move(dyn);
        }
        if (j.contains("out_dir"))
            config.out_dir = j.at("out_dir").get<std::string>();
    } catch (const json::exception& err) {
        throw DataError(path.string() + ": " + err.what());
    }

    for (double a : config.alpha_grid)
        if (!(a > 0.0)) throw DataError(path.string() + ": alpha values must be positive");
    for (const auto& [sh, sj] : config.disorder_grid)
        if (sh < 0.0 || sj < 0.0)
            throw DataError(path.string() + ": sigma values must be non-negative");
    if (config.realizations < 1)
        throw DataError(path.string() + ": realizations must be >= 1");
    if (config.dynamics)
        for (double a : config.dynamics->actions)
            if (!(a > 0.0))
                throw DataError(path.string() + ": actions must be positive");
    return config;
}

SweepReport run_sweep(const SweepConfig& config) {
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);

    SweepReport report;
    report.ok = true;
    report.manifest_path = config.out_dir / "manifest.json";

    json manifest;
    manifest["problem"] = problem_json(config.problem);
    manifest["master_seed"] = config.master_seed;
    manifest["realizations"] = config.realizations;
    manifest["quantize"] = config.quantize;
    manifest["clamp"] = config.clamp;
    manifest["cells"] = json::array();
    manifest["anneal_cells"] = json::array();
    json top_files = json::array();

    // One spectrum per alpha; the problem's own alpha is replaced by the
    // grid value.
    auto rescaled = [&](double alpha) {
        IsingProblem p = config.problem;
        p.alpha = alpha;
        return p;
    };

    std::string summary =
        "alpha,sigma_h,sigma_j,seed,realizations,ground_probability,"
        "occupied_levels,beta,beta_unfittable,jsd_to_fit\n";

    std::size_t cell_index = 0;
    for (std::size_t alpha_idx = 0; alpha_idx < config.alpha_grid.size();
         ++alpha_idx) {
        const double alpha = config.alpha_grid[alpha_idx];
        const IsingProblem ideal = rescaled(alpha);
        Spectrum spectrum;
        try {
            spectrum = enumerate_spectrum(ideal);
            const std::string spec_name =
                "spectrum_alpha" + cell_tag(alpha_idx) + ".csv";
            io::save_spectrum_csv(spectrum, config.out_dir / spec_name);
            top_files.push_back({{"file", spec_name}, {"alpha", alpha}});
        } catch (const std::exception& err) {
            report.ok = false;
            for (std::size_t s = 0; s < config.disorder_grid.size(); ++s) {
                SweepReport::Cell cell;
                cell.index = cell_index++;
                cell.alpha = alpha;
                cell.error = err.what();
                report.cells.push_back(cell);
                manifest["cells"].push_back({{"index", cell.index},
                                             {"alpha", alpha},
                                             {"status", std::string("error: ") +
                                                            err.what()}});
            }
            continue;
        }

        for (const auto& [sigma_h, sigma_j] : config.disorder_grid) {
            SweepReport::Cell cell;
            cell.index = cell_index++;
            cell.alpha = alpha;
            cell.sigma_h = sigma_h;
            cell.sigma_j = sigma_j;
            cell.seed = config.master_seed + cell.index;

            json mcell;
            mcell["index"] = cell.index;
            mcell["alpha"] = alpha;
            mcell["sigma_h"] = sigma_h;
            mcell["sigma_j"] = sigma_j;
            mcell["seed"] = cell.seed;
            mcell["realizations"] = config.realizations;

            try {
                const DisorderParams params(sigma_h, sigma_j, config.quantize,
                                            config.clamp);
                const OutputDistribution dist = run_disorder_ensemble(
                    ideal, params, config.realizations, cell.seed, config.workers);
                const LevelDistribution levels =
                    collapse_to_levels(dist, ideal, spectrum);

                const std::string tag = cell_tag(cell.index);
                const std::string dist_name = "cell_" + tag + "_dist.csv";
                const std::string levels_name = "cell_" + tag + "_levels.csv";
                const std::string hist_name = "cell_" + tag + "_hist.csv";
                io::save_distribution_csv(dist, ideal, config.out_dir / dist_name);
                io::save_levels_csv(levels, config.out_dir / levels_name);
                io::save_histogram_csv(levels, config.out_dir / hist_name);
                json files = json::array({dist_name, levels_name, hist_name});

                cell.ground_probability =
                    levels.entries.front().energy - spectrum.ground_energy() <= 1e-9
                        ? levels.entries.front().probability
                        : 0.0;
                mcell["ground_probability"] = cell.ground_probability;

                std::string beta_field;
                std::string jsd_field;
                bool unfittable = false;
                try {
                    const BoltzmannFit fit = fit_beta(levels, spectrum);
                    cell.beta = fit.beta;
                    const std::string fit_name = "cell_" + tag + "_fit.json";
                    io::save_fit_report(fit, config.out_dir / fit_name);
                    files.push_back(fit_name);
                    const LevelDistribution model =
                        boltzmann_distribution(spectrum, fit.beta);
                    cell.jsd_to_fit = jsd(align(levels, model));
                    beta_field = io::format_double(fit.beta);
                    jsd_field = io::format_double(*cell.jsd_to_fit);
                    mcell["beta"] = fit.beta;
                    mcell["jsd_to_fit"] = *cell.jsd_to_fit;
                } catch (const UnfittableError&) {
                    unfittable = true;
                    mcell["beta"] = nullptr;
                    mcell["beta_unfittable"] = true;
                }

                summary += io::format_double(alpha) + "," +
                           io::format_double(sigma_h) + "," +
                           io::format_double(sigma_j) + "," +
                           std::to_string(cell.seed) + "," +
                           std::to_string(config.realizations) + "," +
                           io::format_double(cell.ground_probability) + "," +
                           std::to_string(levels.entries.size()) + "," + beta_field +
                           "," + (unfittable ? "1" : "0") + "," + jsd_field + "\n";

                mcell["files"] = std::move(files);
                mcell["status"] = "ok";
                cell.ok = true;
            } catch (const std::exception& err) {
                cell.error = err.what();
                mcell["status"] = std::string("error: ") + err.what();
                report.ok = false;
            }
            manifest["cells"].push_back(std::move(mcell));
            report.cells.push_back(cell);
        }
    }

    if (config.dynamics) {
        std::size_t anneal_index = 0;
        for (double alpha : config.alpha_grid) {
            const IsingProblem ideal = rescaled(alpha);
            for (double action : config.dynamics->actions) {
                json mcell;
                mcell["index"] = anneal_index;
                mcell["alpha"] = alpha;
                mcell["action"] = action;
                try {
                    AnnealParams params;
                    params.action_override = action;
                    params.step_tol = config.dynamics->step_tol;
                    params.angular_factor = config.dynamics->angular_factor;
                    const QuantumState state =
                        evolve(ideal, Schedule::published(), params);
                    const OutputDistribution dist = measure_distribution(state);
                    const std::string name =
                        "anneal_" + cell_tag(anneal_index) + "_dist.csv";
                    io::save_distribution_csv(dist, ideal, config.out_dir / name);
                    mcell["files"] = json::array({name});
                    mcell["ground_overlap"] = ground_overlap(state, ideal);
                    mcell["status"] = "ok";
                } catch (const std::exception& err) {
                    mcell["status"] = std::string("error: ") + err.what();
                    report.ok = false;
                }
                manifest["anneal_cells"].push_back(std::move(mcell));
                ++anneal_index;
            }
        }
    }

    {
        std::ofstream out(config.out_dir / "summary.csv", std::ios::binary);
        if (!out) throw DataError("cannot write sweep summary");
        out << summary;
        top_files.push_back({{"file", "summary.csv"}});
    }
    manifest["files"] = std::move(top_files);
    manifest["status"] = report.ok ? "ok" : "failed";

    std::ofstream out(report.manifest_path, std::ios::binary);
    if (!out) throw DataError("cannot write manifest");
    out << manifest.dump(2) << "\n";
    return report;
}

CompareReport compare(const OutputDistribution& dist_a,
                      const OutputDistribution& dist_b, const IsingProblem& ideal,
                      const Spectrum& spectrum) {
    const LevelDistribution levels_a = collapse_to_levels(dist_a, ideal, spectrum);
    const LevelDistribution levels_b = collapse_to_levels(dist_b, ideal, spectrum);
    const AlignedDistributionPair pair = align(levels_a, levels_b);

    CompareReport report;
    report.jsd = jsd(pair);
    for (std::size_t i = 0; i < pair.support.size(); ++i) {
        CompareReport::Row row;
        row.energy = pair.support[i];
        row.p_a = pair.p[i];
        row.p_b = pair.q[i];
        for (const auto& level : spectrum.levels)
            if (std::abs(level.energy - row.energy) <= 1e-9) {
                row.degeneracy = level.degeneracy;
                break;
            }
        report.rows.push_back(row);
    }
    try {
        report.fit_a = fit_beta(levels_a, spectrum);
    } catch (const UnfittableError&) {
    }
    try {
        report.fit_b = fit_beta(levels_b, spectrum);
    } catch (const UnfittableError&) {
    }
    return report;
}

std::string render_compare_report(const CompareReport& report) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "JSD: %.4f%%\n", report.jsd * 100.0);
    out << line;
    out << "energy        degeneracy  p_a           p_b\n";
    for (const auto& row : report.rows) {
        std::snprintf(line, sizeof(line), "%-13.6g %-11llu %-13.6g %-13.6g\n",
                      row.energy, static_cast<unsigned long long>(row.degeneracy),
                      row.p_a, row.p_b);
        out << line;
    }
    auto fit_line = [&](const char* name, const std::optional<BoltzmannFit>& fit) {
        if (fit)
            std::snprintf(line, sizeof(line), "beta_%s: %.10g\n", name, fit->beta);
        else
            std::snprintf(line, sizeof(line), "beta_%s: unfittable\n", name);
        out << line;
    };
    fit_line("a", report.fit_a);
    fit_line("b", report.fit_b);
    return out.str();
}

}  // namespace qadis
