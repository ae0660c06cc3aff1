#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qadis/errors.hpp"

namespace qadis {

/// One classical output register state: n spins, each +1 or -1, packed as an
/// n-bit word. Bit i clear means s_i = +1, bit i set means s_i = -1.
struct SpinConfiguration {
    std::uint32_t bits = 0;
    int n = 0;

    SpinConfiguration() = default;
    SpinConfiguration(std::uint32_t bits_, int n_);

    /// Spin value of qubit i as +1 / -1.
    int spin(int i) const { return (bits >> i) & 1u ? -1 : +1; }

    bool operator==(const SpinConfiguration& o) const {
        return bits == o.bits && n == o.n;
    }
    bool operator<(const SpinConfiguration& o) const { return bits < o.bits; }
};

/// Connectivity of a problem: qubit count and the set of coupled pairs.
/// Edges are stored canonically: i < j, sorted ascending, no duplicates.
struct ProblemGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    ProblemGraph() = default;
    ProblemGraph(int n_, std::vector<std::pair<int, int>> edges_);

    std::size_t edge_count() const { return edges.size(); }
};

/// Ising target Hamiltonian: local fields h, couplings J on a graph, and a
/// global scale alpha. Fields and couplings are stored UNSCALED; every
/// energy evaluation multiplies by alpha. Values are dimensionless, in
/// units of the schedule's final value B(1).
struct IsingProblem {
    ProblemGraph graph;
    std::vector<double> h;          // one per site
    std::vector<double> j;          // aligned with graph.edges
    double alpha = 1.0;

    IsingProblem() = default;
    IsingProblem(ProblemGraph graph_, std::vector<double> h_,
                 std::vector<double> j_, double alpha_);

    int n() const { return graph.n; }

    /// Sites that actually enter the Hamiltonian: nonzero field or at least
    /// one incident coupler. Sites with h = 0 and no couplers are frozen at
    /// +1 and excluded from enumeration, sampling and dynamics.
    std::vector<int> active_sites() const;
    int active_count() const { return static_cast<int>(active_sites().size()); }

    /// True when every scaled parameter is inside the hardware tuning
    /// ranges alpha*h in [-2,2], alpha*j in [-1,1]. Advisory only.
    bool within_hardware_range() const;
};

/// Sorted distinct energy levels of an Ising problem. Degeneracies count
/// configurations of the active sites; representatives are full-width
/// configurations with inactive bits clear, capped at `rep_cap` per level.
struct Spectrum {
    struct Level {
        double energy = 0.0;
        std::uint64_t degeneracy = 0;
        std::vector<SpinConfiguration> representatives;
    };
    std::vector<Level> levels;
    int n = 0;             // configuration width (problem site count)
    int active_count = 0;  // enumerated qubits; sum of degeneracies = 2^active_count
    double alpha = 1.0;

    double ground_energy() const { return levels.front().energy; }
    double max_energy() const { return levels.back().energy; }
};

/// A single coupler record: endpoints and strength.
struct Coupler {
    int i = 0;
    int j = 0;
    double value = 0.0;
};

/// Builds a problem from unordered coupler records, canonicalizing edges
/// (i < j, ascending) while keeping each value attached to its edge.
IsingProblem make_problem(int n, std::vector<double> h,
                          const std::vector<Coupler>& couplers, double alpha);

/// Evaluates alpha * (sum_i h_i s_i + sum_(i,j) J_ij s_i s_j).
double energy(const IsingProblem& problem, const SpinConfiguration& config);

/// Exhaustively enumerates the classical spectrum over the active sites.
/// Energies within merge_tol of each other collapse into one level.
/// Requires active_count <= 26.
Spectrum enumerate_spectrum(const IsingProblem& problem,
                            double merge_tol = 1e-9, int rep_cap = 16);

/// E_1 - E_0 of an enumerated spectrum. Throws ConsistencyError when the
/// spectrum has a single level.
double low_energy_gap(const Spectrum& spectrum);

/// The built-in 14-slot reference problem (10 active qubits) whose spectrum
/// has a non-degenerate ground state and a threefold degenerate first
/// excited state. Sites 3, 6, 7 and 11 carry no field and no couplers.
IsingProblem reference_problem(double alpha);

namespace detail {

/// Internal dense view of a problem restricted to its active sites, with
/// alpha folded into the coefficients. Used by the enumeration kernels,
/// the solvers and the dynamics module.
struct CompactProblem {
    int width = 0;                        // original site count
    std::vector<int> sites;               // active sites, ascending
    std::vector<double> field;            // alpha * h, per active site
    std::vector<std::pair<int, int>> edges;  // endpoints in active-index space
    std::vector<double> coupling;         // alpha * j, aligned with edges
    // per active site: (neighbor active index, edge position); couplings are
    // looked up positionally so value arrays can be swapped per realization
    std::vector<std::vector<std::pair<int, int>>> adjacency;

    int count() const { return static_cast<int>(sites.size()); }

    /// Energy of the active-space word z (bit k = spin of sites[k]).
    double energy_of_word(std::uint32_t z) const;

    /// Expand an active-space word to a full-width configuration.
    SpinConfiguration expand(std::uint32_t z) const;

    /// Project a full-width configuration onto the active-space word.
    std::uint32_t compress(const SpinConfiguration& config) const;
};

CompactProblem compact(const IsingProblem& problem);

}  // namespace detail

}  // namespace qadis
