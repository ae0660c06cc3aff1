#pragma once

#include <cstdint>
#include <map>

#include "qadis/disorder.hpp"
#include "qadis/ising.hpp"

namespace qadis {

/// Empirical probability mass over output register configurations, with raw
/// counts. Keys are full-width configuration words.
struct OutputDistribution {
    std::map<std::uint32_t, std::uint64_t> counts;
    std::uint64_t total = 0;
    int n = 0;

    double probability(std::uint32_t bits) const {
        auto it = counts.find(bits);
        return it == counts.end() ? 0.0
                                  : static_cast<double>(it->second) /
                                        static_cast<double>(total);
    }
};

/// Probability mass over ideal energy levels (occupied levels only,
/// ascending by energy).
struct LevelDistribution {
    struct Entry {
        double energy = 0.0;
        std::uint64_t degeneracy = 0;
        double probability = 0.0;
    };
    std::vector<Entry> entries;
    std::uint64_t total = 0;

    double mean_energy() const {
        double m = 0.0;
        for (const auto& e : entries) m += e.energy * e.probability;
        return m;
    }
};

/// Runs the core experiment: for realization i in [0, realizations) perturb
/// with RealizationSeed{master_seed, i}, solve exactly, and count the
/// minimizer configuration. Deterministic for fixed inputs regardless of
/// worker count (workers = 0 picks the hardware concurrency).
OutputDistribution run_disorder_ensemble(const IsingProblem& problem,
                                         const DisorderParams& params,
                                         std::uint64_t realizations,
                                         std::uint64_t master_seed,
                                         int workers = 0);

/// Scores every configuration against the ideal problem and accumulates
/// probability per spectrum level. A configuration whose ideal energy
/// matches no level within tol signals a spectrum/problem mismatch.
LevelDistribution collapse_to_levels(const OutputDistribution& dist,
                                     const IsingProblem& ideal,
                                     const Spectrum& spectrum, double tol = 1e-9);

}  // namespace qadis
