#pragma once

#include "qadis/ensemble.hpp"
#include "qadis/ising.hpp"

namespace qadis {

/// Two probability vectors over a shared, ascending support of labels.
struct AlignedDistributionPair {
    std::vector<double> support;
    std::vector<double> p;
    std::vector<double> q;

    AlignedDistributionPair() = default;
    AlignedDistributionPair(std::vector<double> support_, std::vector<double> p_,
                            std::vector<double> q_);
};

/// Maximum-likelihood Boltzmann fit. beta is in units of 1/B(1) with k_B = 1.
struct BoltzmannFit {
    double beta = 0.0;
    double mean_energy_residual = 0.0;
    double log_likelihood = 0.0;
    std::size_t support_size = 0;
};

/// Kullback-Leibler divergence sum_i p_i log2(p_i / q_i). Terms with
/// p_i = 0 contribute zero. Returns +infinity when some p_i > 0 has q_i = 0.
double kld(const AlignedDistributionPair& pair);

/// Jensen-Shannon divergence (base 2): always finite, symmetric, in [0, 1].
double jsd(const AlignedDistributionPair& pair);

/// Boltzmann distribution over the spectrum's levels at inverse temperature
/// beta, with degeneracy weights and overflow-safe exponent shifting.
LevelDistribution boltzmann_distribution(const Spectrum& spectrum, double beta);

/// Maximum-likelihood beta for an empirical level distribution: solves
/// <E>_model(beta) = <E>_empirical by bisection on the strictly decreasing
/// model mean energy. Throws UnfittableError when the empirical mean sits at
/// or outside the spectral extremes.
BoltzmannFit fit_beta(const LevelDistribution& empirical, const Spectrum& spectrum);

/// Diagnostic alternative: least-squares fit of beta on log-probabilities of
/// the occupied levels.
BoltzmannFit fit_beta_least_squares(const LevelDistribution& empirical,
                                    const Spectrum& spectrum);

/// Aligns two level distributions on the union of their supports, filling
/// missing entries with probability zero. Two levels of one input closer
/// than tol raise a ConsistencyError (ambiguous alignment).
AlignedDistributionPair align(const LevelDistribution& a,
                              const LevelDistribution& b, double tol = 1e-9);

}  // namespace qadis
