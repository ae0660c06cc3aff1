#include "qadis/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "qadis/solver.hpp"

namespace qadis {

namespace {
constexpr std::uint64_t kChunk = 1024;
}

OutputDistribution run_disorder_ensemble(const IsingProblem& problem,
                                         const DisorderParams& params,
                                         std::uint64_t realizations,
                                         std::uint64_t master_seed, int workers) {
    if (realizations < 1)
        throw std::invalid_argument("run_disorder_ensemble: realizations must be >= 1");
    const auto ideal = detail::compact(problem);
    if (ideal.count() > 26)
        throw CapabilityError("run_disorder_ensemble: " +
                              std::to_string(ideal.count()) +
                              " active qubits exceed the 26-qubit limit");

    if (workers <= 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t chunks = (realizations + kChunk - 1) / kChunk;
    workers = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), chunks));

    std::atomic<std::uint64_t> next_chunk{0};
    std::mutex merge_mutex;
    std::map<std::uint32_t, std::uint64_t> counts;

    auto work = [&]() {
        std::unordered_map<std::uint32_t, std::uint64_t> local;
        std::vector<double> field;
        std::vector<double> coupling;
        for (;;) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= chunks) break;
            const std::uint64_t begin = c * kChunk;
            const std::uint64_t end = std::min(begin + kChunk, realizations);
            for (std::uint64_t i = begin; i < end; ++i) {
                detail::perturb_compact(ideal, params, {master_seed, i}, field,
                                        coupling);
                const auto min = detail::minimize_compact(ideal, field, coupling);
                ++local[min.word];
            }
        }
        // Count merging is commutative, so the final map is independent of
        // which worker handled which chunk.
        std::lock_guard<std::mutex> lock(merge_mutex);
        for (const auto& [word, count] : local) counts[word] += count;
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    OutputDistribution dist;
    dist.n = problem.n();
    dist.total = realizations;
    for (const auto& [word, count] : counts)
        dist.counts.emplace(ideal.expand(word).bits, count);
    return dist;
}

LevelDistribution collapse_to_levels(const OutputDistribution& dist,
                                     const IsingProblem& ideal,
                                     const Spectrum& spectrum, double tol) {
    if (dist.n != ideal.n())
        throw std::invalid_argument(
            "collapse_to_levels: distribution width != problem size");
    if (dist.total == 0)
        throw std::invalid_argument("collapse_to_levels: empty distribution");

    std::vector<std::uint64_t> level_counts(spectrum.levels.size(), 0);
    for (const auto& [bits, count] : dist.counts) {
        const double e = energy(ideal, SpinConfiguration(bits, dist.n));
        // Levels are sorted; find the nearest by energy.
        auto it = std::lower_bound(
            spectrum.levels.begin(), spectrum.levels.end(), e,
            [](const Spectrum::Level& lvl, double v) { return lvl.energy < v; });
        std::size_t k = static_cast<std::size_t>(it - spectrum.levels.begin());
        if (k == spectrum.levels.size() ||
            (k > 0 && e - spectrum.levels[k - 1].energy < spectrum.levels[k].energy - e))
            --k;
        if (std::abs(spectrum.levels[k].energy - e) > tol)
            throw ConsistencyError(
                "collapse_to_levels: configuration energy " + std::to_string(e) +
                " matches no spectrum level within tolerance");
        level_counts[k] += count;
    }

    LevelDistribution out;
    out.total = dist.total;
    for (std::size_t k = 0; k < level_counts.size(); ++k) {
        if (level_counts[k] == 0) continue;
        LevelDistribution::Entry entry;
        entry.energy = spectrum.levels[k].energy;
        entry.degeneracy = spectrum.levels[k].degeneracy;
        entry.probability = static_cast<double>(level_counts[k]) /
                            static_cast<double>(dist.total);
        out.entries.push_back(entry);
    }
    return out;
}

}  // namespace qadis
