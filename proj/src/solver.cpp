#include "qadis/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace qadis {
namespace {

// Slack band for the Gray walk: accumulated delta-update energies drift from
// direct evaluation by far less than this, so every true minimizer's word
// lands inside the band and can be re-evaluated directly.
double gray_slack(const detail::CompactProblem& cp) {
    double mass = 0.0;
    for (double f : cp.field) mass += std::abs(f);
    for (double c : cp.coupling) mass += std::abs(c);
    return 1e-8 * (1.0 + mass);
}

GroundStateResult finalize(const detail::CompactProblem& cp,
                           std::vector<std::uint32_t>& candidates, double tie_tol) {
    // Candidates were selected on accumulated energies; settle ties on direct
    // per-word evaluation so the result matches naive re-evaluation exactly.
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<std::uint32_t, double>> scored;
    scored.reserve(candidates.size());
    for (std::uint32_t w : candidates) {
        const double e = cp.energy_of_word(w);
        scored.emplace_back(w, e);
        best = std::min(best, e);
    }
    GroundStateResult result;
    result.energy = best;
    for (const auto& [w, e] : scored)
        if (e <= best + tie_tol) result.configs.push_back(cp.expand(w));
    std::sort(result.configs.begin(), result.configs.end());
    result.configs.erase(
        std::unique(result.configs.begin(), result.configs.end()),
        result.configs.end());
    return result;
}

GroundStateResult solve(const IsingProblem& problem, double tie_tol, int max_active,
                        const char* name, bool gray) {
    if (tie_tol < 0.0 || !std::isfinite(tie_tol))
        throw std::invalid_argument(std::string(name) +
                                    ": tie_tol must be finite and >= 0");
    const auto cp = detail::compact(problem);
    const int na = cp.count();
    if (na > max_active)
        throw CapabilityError(std::string(name) + ": " + std::to_string(na) +
                              " active qubits exceed the " +
                              std::to_string(max_active) + "-qubit limit");
    if (na == 0) {
        GroundStateResult r;
        r.configs.push_back(SpinConfiguration(0, problem.n()));
        r.energy = 0.0;
        return r;
    }

    const std::uint64_t total = std::uint64_t{1} << na;
    std::vector<std::uint32_t> candidates;

    if (!gray) {
        // Independent oracle path: direct evaluation of every configuration.
        double best = std::numeric_limits<double>::infinity();
        for (std::uint64_t z = 0; z < total; ++z) {
            const double e = cp.energy_of_word(static_cast<std::uint32_t>(z));
            if (e < best) best = e;
        }
        for (std::uint64_t z = 0; z < total; ++z) {
            const double e = cp.energy_of_word(static_cast<std::uint32_t>(z));
            if (e <= best + tie_tol)
                candidates.push_back(static_cast<std::uint32_t>(z));
        }
        return finalize(cp, candidates, tie_tol);
    }

    const double band = gray_slack(cp) + tie_tol;
    std::vector<double> spin(static_cast<std::size_t>(na), 1.0);
    double e = 0.0;
    for (double f : cp.field) e += f;
    for (double c : cp.coupling) e += c;
    std::uint32_t word = 0;
    double best = e;
    std::vector<std::pair<std::uint32_t, double>> held = {{word, e}};
    for (std::uint64_t t = 1; t < total; ++t) {
        const int k = std::countr_zero(t);
        double local = cp.field[k];
        for (const auto& [other, eidx] : cp.adjacency[k])
            local += cp.coupling[eidx] * spin[other];
        e -= 2.0 * spin[k] * local;
        spin[k] = -spin[k];
        word ^= (1u << k);
        if (e <= best + band) {
            if (e < best) {
                best = e;
                std::erase_if(held, [&](const auto& p) {
                    return p.second > best + band;
                });
            }
            held.emplace_back(word, e);
        }
    }
    candidates.reserve(held.size());
    for (const auto& [w, unused] : held) candidates.push_back(w);
    return finalize(cp, candidates, tie_tol);
}

}  // namespace

GroundStateResult ground_state(const IsingProblem& problem, double tie_tol) {
    return solve(problem, tie_tol, 26, "ground_state", true);
}

GroundStateResult ground_state_naive(const IsingProblem& problem, double tie_tol) {
    return solve(problem, tie_tol, 20, "ground_state_naive", false);
}

namespace detail {

CompactMinimum minimize_compact(const CompactProblem& structure,
                                const std::vector<double>& field,
                                const std::vector<double>& coupling) {
    const int na = structure.count();
    CompactMinimum out;
    if (na == 0) return out;

    double spin_store[32];
    for (int k = 0; k < na; ++k) spin_store[k] = 1.0;

    double e = 0.0;
    for (double f : field) e += f;
    for (double c : coupling) e += c;
    std::uint32_t word = 0;
    double best = e;
    std::uint32_t best_word = 0;

    const std::uint64_t total = std::uint64_t{1} << na;
    for (std::uint64_t t = 1; t < total; ++t) {
        const int k = std::countr_zero(t);
        double local = field[k];
        for (const auto& [other, eidx] : structure.adjacency[k])
            local += coupling[eidx] * spin_store[other];
        e -= 2.0 * spin_store[k] * local;
        spin_store[k] = -spin_store[k];
        word ^= (1u << k);
        if (e < best || (e == best && word < best_word)) {
            best = e;
            best_word = word;
        }
    }

    out.word = best_word;
    // Report the directly evaluated energy of the winner, not the
    // delta-accumulated running value.
    double direct = 0.0;
    for (int k = 0; k < na; ++k)
        direct += field[k] * (((best_word >> k) & 1u) ? -1.0 : 1.0);
    for (std::size_t idx = 0; idx < structure.edges.size(); ++idx) {
        const auto& [a, b] = structure.edges[idx];
        const double sab = (((best_word >> a) ^ (best_word >> b)) & 1u) ? -1.0 : 1.0;
        direct += coupling[idx] * sab;
    }
    out.energy = direct;
    return out;
}

}  // namespace detail

}  // namespace qadis
