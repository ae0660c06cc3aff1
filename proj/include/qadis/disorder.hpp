#pragma once

#include <cstdint>

#include "qadis/ising.hpp"

namespace qadis {

/// Static-disorder model parameters: Gaussian noise widths for fields and
/// couplers (units of B(1)), plus hardware-realism switches.
struct DisorderParams {
    double sigma_h = 0.0;   // std. dev. of field noise
    double sigma_j = 0.0;   // std. dev. of coupler noise
    bool quantize = false;  // round perturbed values to the nearest 0.001
    bool clamp = false;     // clip fields to [-2,2], couplers to [-1,1]

    DisorderParams() = default;
    DisorderParams(double sigma_h_, double sigma_j_, bool quantize_ = false,
                   bool clamp_ = false);
};

/// Identifies one disorder realization: the (master seed, index) pair fully
/// determines every perturbation draw.
struct RealizationSeed {
    std::uint64_t master_seed = 0;
    std::uint64_t realization_index = 0;
};

/// Samples one disordered realization: returns a problem with alpha folded
/// in (alpha = 1), fields alpha*h_i + X_i and couplers alpha*J_ij + Y_ij,
/// X_i ~ N(0, sigma_h) on active sites, Y_ij ~ N(0, sigma_j) on couplers.
/// Deterministic given the seed.
IsingProblem perturb(const IsingProblem& problem, const DisorderParams& params,
                     const RealizationSeed& seed);

/// Aggregate energy-level uncertainty sqrt(sigma_h^2 * N + sigma_j^2 * |G|)
/// for N active qubits and |G| couplers.
double sigma_e(const DisorderParams& params, int n_active, int edge_count);

namespace detail {

/// Applies one realization's noise to compact coefficient arrays in place
/// (fields indexed by absolute site, couplers by edge position). Must match
/// perturb() draw-for-draw; the ensemble runner uses this to avoid
/// rebuilding problem objects.
void perturb_compact(const CompactProblem& ideal, const DisorderParams& params,
                     const RealizationSeed& seed, std::vector<double>& field_out,
                     std::vector<double>& coupling_out);

}  // namespace detail

}  // namespace qadis
