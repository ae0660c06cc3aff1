#pragma once

#include <vector>

#include "qadis/ising.hpp"

namespace qadis {

/// All minimizers of a classical Ising problem within a tie tolerance,
/// ascending by bit pattern, plus the minimum energy.
struct GroundStateResult {
    std::vector<SpinConfiguration> configs;
    double energy = 0.0;
};

/// Exact ground state by exhaustive Gray-code enumeration with single-flip
/// delta updates. Requires active_count <= 26. With tie_tol = 0 only exact
/// ties are kept (the continuous disorder model makes those measure-zero).
GroundStateResult ground_state(const IsingProblem& problem, double tie_tol = 0.0);

/// Differential-test oracle: identical contract to ground_state, computed by
/// independent full per-configuration evaluation. Requires active_count <= 20.
GroundStateResult ground_state_naive(const IsingProblem& problem,
                                     double tie_tol = 0.0);

namespace detail {

/// Gray-walk minimum over an active-space compact problem with coefficient
/// arrays supplied separately (the ensemble runner swaps in perturbed
/// values). Returns the lowest-bit-pattern minimizer word and its energy.
struct CompactMinimum {
    std::uint32_t word = 0;
    double energy = 0.0;
};
CompactMinimum minimize_compact(const CompactProblem& structure,
                                const std::vector<double>& field,
                                const std::vector<double>& coupling);

}  // namespace detail

}  // namespace qadis
