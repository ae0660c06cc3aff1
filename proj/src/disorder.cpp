#include "qadis/disorder.hpp"

#include <algorithm>
#include <cmath>

#include "qadis/rng.hpp"

namespace qadis {
namespace {

double quantize_value(double v) { return std::round(v * 1000.0) / 1000.0; }

double clamp_field(double v) { return std::clamp(v, -2.0, 2.0); }
double clamp_coupler(double v) { return std::clamp(v, -1.0, 1.0); }

double finish(double v, const DisorderParams& p, bool is_field) {
    if (p.quantize) v = quantize_value(v);
    if (p.clamp) v = is_field ? clamp_field(v) : clamp_coupler(v);
    return v;
}

}  // namespace

DisorderParams::DisorderParams(double sigma_h_, double sigma_j_, bool quantize_,
                               bool clamp_)
    : sigma_h(sigma_h_), sigma_j(sigma_j_), quantize(quantize_), clamp(clamp_) {
    if (!(sigma_h >= 0.0) || !std::isfinite(sigma_h) || !(sigma_j >= 0.0) ||
        !std::isfinite(sigma_j))
        throw std::invalid_argument(
            "DisorderParams: sigma values must be finite and non-negative");
}

IsingProblem perturb(const IsingProblem& problem, const DisorderParams& params,
                     const RealizationSeed& seed) {
    const int n = problem.n();
    const auto active = problem.active_sites();
    std::vector<bool> is_active(n, false);
    for (int s : active) is_active[s] = true;

    // Field noise is keyed by absolute site index, coupler noise by edge
    // position offset by n, so draws are independent of which other
    // parameters exist.
    std::vector<double> h(n, 0.0);
    for (int i = 0; i < n; ++i) {
        if (!is_active[i]) continue;
        double v = problem.alpha * problem.h[i];
        if (params.sigma_h > 0.0)
            v += params.sigma_h *
                 rng::gaussian(seed.master_seed, seed.realization_index,
                               static_cast<std::uint64_t>(i));
        h[i] = finish(v, params, true);
    }

    std::vector<double> j(problem.j.size(), 0.0);
    for (std::size_t e = 0; e < problem.j.size(); ++e) {
        double v = problem.alpha * problem.j[e];
        if (params.sigma_j > 0.0)
            v += params.sigma_j *
                 rng::gaussian(seed.master_seed, seed.realization_index,
                               static_cast<std::uint64_t>(n) + e);
        j[e] = finish(v, params, false);
    }

    return IsingProblem(problem.graph, std::move(h), std::move(j), 1.0);
}

double sigma_e(const DisorderParams& params, int n_active, int edge_count) {
    if (n_active < 0 || edge_count < 0)
        throw std::invalid_argument("sigma_e: counts must be non-negative");
    return std::sqrt(params.sigma_h * params.sigma_h * n_active +
                     params.sigma_j * params.sigma_j * edge_count);
}

namespace detail {

void perturb_compact(const CompactProblem& ideal, const DisorderParams& params,
                     const RealizationSeed& seed, std::vector<double>& field_out,
                     std::vector<double>& coupling_out) {
    field_out.resize(ideal.field.size());
    for (int k = 0; k < ideal.count(); ++k) {
        double v = ideal.field[k];
        if (params.sigma_h > 0.0)
            v += params.sigma_h *
                 rng::gaussian(seed.master_seed, seed.realization_index,
                               static_cast<std::uint64_t>(ideal.sites[k]));
        field_out[k] = finish(v, params, true);
    }
    coupling_out.resize(ideal.coupling.size());
    for (std::size_t e = 0; e < ideal.coupling.size(); ++e) {
        double v = ideal.coupling[e];
        if (params.sigma_j > 0.0)
            v += params.sigma_j *
                 rng::gaussian(seed.master_seed, seed.realization_index,
                               static_cast<std::uint64_t>(ideal.width) + e);
        coupling_out[e] = finish(v, params, false);
    }
}

}  // namespace detail

}  // namespace qadis
