#include "qadis/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qadis/rng.hpp"

namespace qadis {
namespace {

double poly_eval(const std::vector<double>& coeffs, double s) {
    double acc = 0.0;
    for (double c : coeffs) acc = acc * s + c;
    return acc;
}

// Diagonal of the dimensionless target Hamiltonian over the active subspace.
std::vector<double> diagonal_energies(const detail::CompactProblem& cp) {
    const std::size_t dim = std::size_t{1} << cp.count();
    std::vector<double> diag(dim);
    for (std::size_t z = 0; z < dim; ++z)
        diag[z] = cp.energy_of_word(static_cast<std::uint32_t>(z));
    return diag;
}

// out = (a_coeff * sum_x + diag_coeff * D) |psi>, matrix-free, fixed
// summation order (diagonal first, then bit flips ascending).
void apply_generator(const std::vector<double>& diag, double a_coeff,
                     double diag_coeff,
                     const std::vector<std::complex<double>>& psi,
                     std::vector<std::complex<double>>& out) {
    const std::size_t dim = psi.size();
    const int nq = std::countr_zero(dim);
    for (std::size_t z = 0; z < dim; ++z) out[z] = diag_coeff * diag[z] * psi[z];
    for (int k = 0; k < nq; ++k) {
        const std::size_t mask = std::size_t{1} << k;
        for (std::size_t z = 0; z < dim; ++z) out[z] += a_coeff * psi[z ^ mask];
    }
}

void normalize(std::vector<std::complex<double>>& psi) {
    double n2 = 0.0;
    for (const auto& a : psi) n2 += std::norm(a);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : psi) a *= inv;
}

// One full fixed-step RK4 pass from s = 0 to 1 with m steps.
std::vector<std::complex<double>> propagate(const std::vector<double>& diag,
                                            const Schedule& schedule, double action,
                                            double b1,
                                            std::vector<std::complex<double>> psi,
                                            std::uint64_t m) {
    const double ds = 1.0 / static_cast<double>(m);
    const std::size_t dim = psi.size();
    std::vector<std::complex<double>> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    const std::complex<double> mi(0.0, -1.0);

    auto deriv = [&](double s, const std::vector<std::complex<double>>& in,
                     std::vector<std::complex<double>>& out) {
        const ScheduleValue v = eval_schedule(schedule, s);
        apply_generator(diag, action * v.a / b1, action * v.b / b1, in, out);
        for (auto& a : out) a *= mi;
    };

    for (std::uint64_t step = 0; step < m; ++step) {
        const double s0 = static_cast<double>(step) * ds;
        const double sh = s0 + 0.5 * ds;
        const double s1 = std::min(s0 + ds, 1.0);
        deriv(s0, psi, k1);
        for (std::size_t z = 0; z < dim; ++z) tmp[z] = psi[z] + 0.5 * ds * k1[z];
        deriv(sh, tmp, k2);
        for (std::size_t z = 0; z < dim; ++z) tmp[z] = psi[z] + 0.5 * ds * k2[z];
        deriv(sh, tmp, k3);
        for (std::size_t z = 0; z < dim; ++z) tmp[z] = psi[z] + ds * k3[z];
        deriv(s1, tmp, k4);
        for (std::size_t z = 0; z < dim; ++z)
            psi[z] += ds / 6.0 * (k1[z] + 2.0 * k2[z] + 2.0 * k3[z] + k4[z]);
        normalize(psi);
    }
    return psi;
}

double overlap_magnitude(const std::vector<std::complex<double>>& a,
                         const std::vector<std::complex<double>>& b) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t z = 0; z < a.size(); ++z) acc += std::conj(a[z]) * b[z];
    return std::abs(acc);
}

}  // namespace

Schedule::Schedule(std::vector<double> a, std::vector<double> b)
    : a_coeffs(std::move(a)), b_coeffs(std::move(b)) {
    if (a_coeffs.empty() || b_coeffs.empty())
        throw std::invalid_argument("Schedule: empty coefficient list");
    const double a0 = poly_eval(a_coeffs, 0.0);
    const double b0 = poly_eval(b_coeffs, 0.0);
    const double a1 = poly_eval(a_coeffs, 1.0);
    const double b1 = poly_eval(b_coeffs, 1.0);
    // The protocol needs a transverse-dominated start and a target-dominated
    // finish: A(0) >> B(0) and A(1) << B(1).
    if (!(a0 > b0) || !(a1 < b1))
        throw std::invalid_argument(
            "Schedule: requires A(0) > B(0) and A(1) < B(1)");
    if (!(b1 > 0.0))
        throw std::invalid_argument("Schedule: B(1) must be positive");
}

Schedule Schedule::published() {
    return Schedule({-15.42, 38.33, -32.15, 9.13}, {11.07, 2.19, 0.11});
}

ScheduleValue eval_schedule(const Schedule& schedule, double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw std::invalid_argument("eval_schedule: s must lie in [0, 1]");
    return {poly_eval(schedule.a_coeffs, s), poly_eval(schedule.b_coeffs, s)};
}

double QuantumState::norm() const {
    double n2 = 0.0;
    for (const auto& a : amplitudes) n2 += std::norm(a);
    return std::sqrt(n2);
}

QuantumState initial_state(int n) {
    if (n < 1 || n > 14)
        throw std::invalid_argument("initial_state: qubit count must be in [1, 14]");
    QuantumState state;
    state.width = n;
    state.sites.resize(n);
    for (int i = 0; i < n; ++i) state.sites[i] = i;
    const std::size_t dim = std::size_t{1} << n;
    const double mag = std::pow(2.0, -0.5 * n);
    state.amplitudes.resize(dim);
    for (std::size_t z = 0; z < dim; ++z)
        state.amplitudes[z] = (std::popcount(z) & 1) ? -mag : mag;
    return state;
}

QuantumState apply_hamiltonian(const IsingProblem& problem, const Schedule& schedule,
                               double s, const QuantumState& state,
                               double angular_factor) {
    const auto cp = detail::compact(problem);
    if (cp.sites != state.sites || state.width != problem.n())
        throw std::invalid_argument(
            "apply_hamiltonian: state register does not match the problem's "
            "active qubits");
    const ScheduleValue v = eval_schedule(schedule, s);
    const auto diag = diagonal_energies(cp);
    QuantumState out = state;
    apply_generator(diag, angular_factor * v.a, angular_factor * v.b,
                    state.amplitudes, out.amplitudes);
    return out;
}

QuantumState evolve(const IsingProblem& problem, const Schedule& schedule,
                    const AnnealParams& params) {
    if (!(params.step_tol > 0.0))
        throw std::invalid_argument("evolve: step_tol must be positive");
    const auto cp = detail::compact(problem);
    const int na = cp.count();
    if (na < 1)
        throw CapabilityError("evolve: problem has no active qubits");
    if (na > 14)
        throw CapabilityError("evolve: " + std::to_string(na) +
                              " active qubits exceed the 14-qubit statevector limit");

    const double b1 = poly_eval(schedule.b_coeffs, 1.0);
    double action;
    if (params.action_override) {
        action = *params.action_override;
        if (!(action > 0.0))
            throw std::invalid_argument("evolve: action must be positive");
    } else {
        if (!(params.tau > 0.0))
            throw std::invalid_argument("evolve: tau must be positive");
        // tau is in microseconds; B is in GHz = 1/ns.
        action = params.angular_factor * b1 * params.tau * 1000.0;
    }

    const auto diag = diagonal_energies(cp);

    // Conservative bound on the generator norm, used to pick the initial
    // step count; Richardson step-halving then drives the accuracy.
    double a_max = 0.0;
    double b_max = 0.0;
    for (int i = 0; i <= 64; ++i) {
        const ScheduleValue v = eval_schedule(schedule, i / 64.0);
        a_max = std::max(a_max, std::abs(v.a));
        b_max = std::max(b_max, std::abs(v.b));
    }
    double e_max = 0.0;
    for (double e : diag) e_max = std::max(e_max, std::abs(e));
    const double g_max = action * (a_max * na + b_max * e_max) / b1;

    std::uint64_t m = std::max<std::uint64_t>(64, static_cast<std::uint64_t>(g_max));
    constexpr std::uint64_t kMaxSteps = std::uint64_t{1} << 24;

    QuantumState state;
    state.width = problem.n();
    state.sites = cp.sites;

    auto start = initial_state(na).amplitudes;
    auto prev = propagate(diag, schedule, action, b1, start, m);
    for (;;) {
        if (2 * m > kMaxSteps)
            throw ConvergenceError(
                "evolve: step refinement exceeded the hard cap without meeting "
                "step_tol");
        m *= 2;
        auto cur = propagate(diag, schedule, action, b1, start, m);
        if (1.0 - overlap_magnitude(prev, cur) < params.step_tol) {
            state.amplitudes = std::move(cur);
            return state;
        }
        prev = std::move(cur);
    }
}

OutputDistribution measure_distribution(const QuantumState& state,
                                        std::optional<std::uint64_t> shots,
                                        std::uint64_t seed) {
    const std::size_t dim = state.amplitudes.size();
    if (dim == 0 || (dim & (dim - 1)) != 0)
        throw std::invalid_argument("measure_distribution: invalid state dimension");

    std::vector<double> born(dim);
    for (std::size_t z = 0; z < dim; ++z) born[z] = std::norm(state.amplitudes[z]);

    auto expand_bits = [&](std::size_t z) {
        std::uint32_t bits = 0;
        for (std::size_t k = 0; k < state.sites.size(); ++k)
            if ((z >> k) & 1u) bits |= (1u << state.sites[k]);
        return bits;
    };

    OutputDistribution dist;
    dist.n = state.width;

    if (!shots) {
        // Exact mode: apportion a nominal total by largest remainder so the
        // counts sum exactly.
        const std::uint64_t total = std::uint64_t{1} << 30;
        double norm2 = 0.0;
        for (double p : born) norm2 += p;
        std::vector<std::pair<double, std::size_t>> remainders;
        std::vector<std::uint64_t> counts(dim, 0);
        std::uint64_t assigned = 0;
        for (std::size_t z = 0; z < dim; ++z) {
            const double exact = born[z] / norm2 * static_cast<double>(total);
            counts[z] = static_cast<std::uint64_t>(exact);
            assigned += counts[z];
            remainders.emplace_back(exact - std::floor(exact), z);
        }
        std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
            return a.first > b.first || (a.first == b.first && a.second < b.second);
        });
        for (std::size_t i = 0; assigned < total; ++i, ++assigned)
            ++counts[remainders[i % dim].second];
        dist.total = total;
        for (std::size_t z = 0; z < dim; ++z)
            if (counts[z] > 0) dist.counts.emplace(expand_bits(z), counts[z]);
        return dist;
    }

    if (*shots == 0)
        throw std::invalid_argument("measure_distribution: shots must be positive");
    std::vector<double> cdf(dim);
    double acc = 0.0;
    for (std::size_t z = 0; z < dim; ++z) {
        acc += born[z];
        cdf[z] = acc;
    }
    const double norm2 = acc;
    rng::UniformStream stream(seed);
    std::map<std::uint32_t, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < *shots; ++i) {
        const double u = stream.next() * norm2;
        const std::size_t z = static_cast<std::size_t>(
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        ++counts[expand_bits(std::min(z, dim - 1))];
    }
    dist.total = *shots;
    dist.counts = std::move(counts);
    return dist;
}

double ground_overlap(const QuantumState& state, const IsingProblem& problem) {
    const auto cp = detail::compact(problem);
    if (cp.sites != state.sites || state.width != problem.n())
        throw std::invalid_argument(
            "ground_overlap: state register does not match the problem's active "
            "qubits");
    const auto diag = diagonal_energies(cp);
    double e0 = diag[0];
    for (double e : diag) e0 = std::min(e0, e);
    const double tol = 1e-9 * (1.0 + std::abs(e0));
    double mass = 0.0;
    for (std::size_t z = 0; z < diag.size(); ++z)
        if (diag[z] <= e0 + tol) mass += std::norm(state.amplitudes[z]);
    return mass;
}

}  // namespace qadis
