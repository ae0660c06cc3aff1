#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "qadis/ensemble.hpp"
#include "qadis/ising.hpp"

namespace qadis {

/// Annealing switching functions A(s), B(s) as polynomials in s = t/tau,
/// coefficients highest degree first, values in GHz. The defaults are the
/// published D-Wave 2000Q regression polynomials.
struct Schedule {
    std::vector<double> a_coeffs;
    std::vector<double> b_coeffs;

    Schedule(std::vector<double> a, std::vector<double> b);

    /// A(s) = -15.42 s^3 + 38.33 s^2 - 32.15 s + 9.13,
    /// B(s) = 11.07 s^2 + 2.19 s + 0.11.
    static Schedule published();
};

struct ScheduleValue {
    double a = 0.0;
    double b = 0.0;
};

/// Normalized statevector over the active qubits of a problem. `sites`
/// lists the absolute qubit indices the amplitude register describes
/// (bit k of a basis index = spin of sites[k]); `width` is the full
/// register width used when expanding measurement outcomes.
struct QuantumState {
    std::vector<std::complex<double>> amplitudes;
    std::vector<int> sites;
    int width = 0;

    int qubits() const { return static_cast<int>(sites.size()); }
    double norm() const;
};

/// Propagation parameters. Either a physical annealing time tau (microseconds)
/// or a dimensionless action tau * B(1) * angular_factor (with time in
/// nanoseconds) via action_override. angular_factor converts GHz to angular
/// frequency; the 2 pi convention is exposed rather than asserted.
struct AnnealParams {
    double tau = 1.0;
    std::optional<double> action_override;
    double step_tol = 1e-6;
    double angular_factor = 2.0 * std::numbers::pi;
};

/// Polynomial evaluation of (A(s), B(s)) in GHz; s must lie in [0, 1].
ScheduleValue eval_schedule(const Schedule& schedule, double s);

/// Ground state of H_in = sum_i sigma_x: the tensor power of
/// (|0> - |1>)/sqrt(2), amplitude (-1)^popcount(z) / 2^(n/2).
QuantumState initial_state(int n);

/// Matrix-free action of H(s) = angular_factor * (A(s) H_in + B(s) H_fin)
/// on a state; H_fin enters as the dimensionless Ising energy (units of
/// B(1)). Returns the unnormalized image.
QuantumState apply_hamiltonian(const IsingProblem& problem, const Schedule& schedule,
                               double s, const QuantumState& state,
                               double angular_factor = 2.0 * std::numbers::pi);

/// Propagates initial_state under i d|psi>/ds = G(s) |psi> with
/// G(s) = action * (A(s) H_in + B(s) H_fin) / B(1), using a fixed-step
/// classical 4th-order integrator with per-step renormalization. The step
/// count is doubled until halving it changes the final-state overlap by
/// less than step_tol. Requires <= 14 active qubits.
QuantumState evolve(const IsingProblem& problem, const Schedule& schedule,
                    const AnnealParams& params);

/// Exact Born probabilities (shots absent, scaled to a nominal total by
/// largest-remainder apportionment) or a multinomial sample of `shots`
/// outcomes, deterministic under `seed`.
OutputDistribution measure_distribution(const QuantumState& state,
                                        std::optional<std::uint64_t> shots = {},
                                        std::uint64_t seed = 0);

/// Total Born probability on the ideal ground-level manifold of the problem.
double ground_overlap(const QuantumState& state, const IsingProblem& problem);

}  // namespace qadis
