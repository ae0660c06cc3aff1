#include "qadis/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace qadis {

SpinConfiguration::SpinConfiguration(std::uint32_t bits_, int n_) : bits(bits_), n(n_) {
    if (n < 1 || n > 30)
        throw std::invalid_argument("SpinConfiguration: qubit count must be in [1, 30]");
    if (n < 32 && (bits >> n) != 0)
        throw std::invalid_argument("SpinConfiguration: set bit beyond qubit count");
}

ProblemGraph::ProblemGraph(int n_, std::vector<std::pair<int, int>> edges_)
    : n(n_), edges(std::move(edges_)) {
    if (n < 1)
        throw std::invalid_argument("ProblemGraph: site count must be positive");
    for (const auto& [i, j] : edges) {
        if (i >= j)
            throw std::invalid_argument("ProblemGraph: edges must satisfy i < j");
        if (i < 0 || j >= n)
            throw std::invalid_argument("ProblemGraph: edge index out of range");
    }
    // Coupling vectors are stored positionally, so the edge order is part of
    // the problem identity: require it canonical instead of sorting here.
    if (!std::is_sorted(edges.begin(), edges.end()))
        throw std::invalid_argument("ProblemGraph: edges must be sorted ascending");
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("ProblemGraph: duplicate edge");
}

IsingProblem::IsingProblem(ProblemGraph graph_, std::vector<double> h_,
                           std::vector<double> j_, double alpha_)
    : graph(std::move(graph_)), h(std::move(h_)), j(std::move(j_)), alpha(alpha_) {
    if (h.size() != static_cast<std::size_t>(graph.n))
        throw std::invalid_argument("IsingProblem: field vector length != site count");
    if (j.size() != graph.edges.size())
        throw std::invalid_argument("IsingProblem: coupling vector length != edge count");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("IsingProblem: alpha must be positive and finite");
}

std::vector<int> IsingProblem::active_sites() const {
    std::vector<bool> active(graph.n, false);
    for (int i = 0; i < graph.n; ++i)
        if (h[i] != 0.0) active[i] = true;
    for (const auto& [a, b] : graph.edges) {
        active[a] = true;
        active[b] = true;
    }
    std::vector<int> out;
    for (int i = 0; i < graph.n; ++i)
        if (active[i]) out.push_back(i);
    return out;
}

bool IsingProblem::within_hardware_range() const {
    for (double hi : h)
        if (std::abs(alpha * hi) > 2.0) return false;
    for (double jv : j)
        if (std::abs(alpha * jv) > 1.0) return false;
    return true;
}

double energy(const IsingProblem& problem, const SpinConfiguration& config) {
    if (config.n != problem.n())
        throw std::invalid_argument("energy: configuration width != problem size");
    double field_term = 0.0;
    for (int i = 0; i < problem.n(); ++i)
        field_term += problem.h[i] * config.spin(i);
    double coupler_term = 0.0;
    for (std::size_t k = 0; k < problem.graph.edges.size(); ++k) {
        const auto& [i, j] = problem.graph.edges[k];
        coupler_term += problem.j[k] * config.spin(i) * config.spin(j);
    }
    return problem.alpha * (field_term + coupler_term);
}

namespace detail {

CompactProblem compact(const IsingProblem& problem) {
    CompactProblem cp;
    cp.width = problem.n();
    cp.sites = problem.active_sites();
    std::vector<int> pos(problem.n(), -1);
    for (int k = 0; k < cp.count(); ++k) pos[cp.sites[k]] = k;

    cp.field.resize(cp.sites.size());
    for (int k = 0; k < cp.count(); ++k)
        cp.field[k] = problem.alpha * problem.h[cp.sites[k]];

    cp.edges.reserve(problem.graph.edges.size());
    cp.coupling.reserve(problem.graph.edges.size());
    cp.adjacency.assign(cp.sites.size(), {});
    for (std::size_t e = 0; e < problem.graph.edges.size(); ++e) {
        const auto& [i, j] = problem.graph.edges[e];
        const int a = pos[i];
        const int b = pos[j];
        cp.edges.emplace_back(a, b);
        cp.coupling.push_back(problem.alpha * problem.j[e]);
        cp.adjacency[a].emplace_back(b, static_cast<int>(e));
        cp.adjacency[b].emplace_back(a, static_cast<int>(e));
    }
    return cp;
}

double CompactProblem::energy_of_word(std::uint32_t z) const {
    double acc = 0.0;
    for (int k = 0; k < count(); ++k)
        acc += field[k] * (((z >> k) & 1u) ? -1.0 : 1.0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& [a, b] = edges[e];
        const double sab = (((z >> a) ^ (z >> b)) & 1u) ? -1.0 : 1.0;
        acc += coupling[e] * sab;
    }
    return acc;
}

SpinConfiguration CompactProblem::expand(std::uint32_t z) const {
    std::uint32_t bits = 0;
    for (int k = 0; k < count(); ++k)
        if ((z >> k) & 1u) bits |= (1u << sites[k]);
    return SpinConfiguration(bits, width);
}

std::uint32_t CompactProblem::compress(const SpinConfiguration& config) const {
    std::uint32_t z = 0;
    for (int k = 0; k < count(); ++k)
        if ((config.bits >> sites[k]) & 1u) z |= (1u << k);
    return z;
}

}  // namespace detail

Spectrum enumerate_spectrum(const IsingProblem& problem, double merge_tol, int rep_cap) {
    const auto cp = detail::compact(problem);
    const int na = cp.count();
    if (na > 26)
        throw CapabilityError("enumerate_spectrum: " + std::to_string(na) +
                              " active qubits exceed the 26-qubit limit");
    if (merge_tol < 0.0 || !std::isfinite(merge_tol))
        throw std::invalid_argument("enumerate_spectrum: merge_tol must be finite and >= 0");

    const std::uint64_t total = na == 0 ? 1 : (std::uint64_t{1} << na);
    std::vector<std::pair<double, std::uint32_t>> table;
    table.reserve(total);

    // Gray-code walk: each step flips one spin and adjusts the energy by its
    // local field plus incident coupler terms.
    std::vector<double> spin(static_cast<std::size_t>(std::max(na, 1)), 1.0);
    double e = 0.0;
    for (double f : cp.field) e += f;
    for (double c : cp.coupling) e += c;
    std::uint32_t word = 0;
    table.emplace_back(e, word);
    for (std::uint64_t t = 1; t < total; ++t) {
        const int k = std::countr_zero(t);
        double local = cp.field[k];
        for (const auto& [other, eidx] : cp.adjacency[k])
            local += cp.coupling[eidx] * spin[other];
        e -= 2.0 * spin[k] * local;
        spin[k] = -spin[k];
        word ^= (1u << k);
        table.emplace_back(e, word);
    }

    std::sort(table.begin(), table.end());

    Spectrum spec;
    spec.n = problem.n();
    spec.active_count = na;
    spec.alpha = problem.alpha;
    for (const auto& [energy_value, bits] : table) {
        if (!spec.levels.empty() &&
            energy_value - spec.levels.back().energy <= merge_tol) {
            auto& level = spec.levels.back();
            ++level.degeneracy;
            if (static_cast<int>(level.representatives.size()) < rep_cap)
                level.representatives.push_back(cp.expand(bits));
        } else {
            Spectrum::Level level;
            level.energy = energy_value;
            level.degeneracy = 1;
            level.representatives.push_back(cp.expand(bits));
            spec.levels.push_back(std::move(level));
        }
    }

    // Total spectral width grows at most linearly with the parameter mass.
    double mass = 0.0;
    for (double f : cp.field) mass += std::abs(f);
    for (double c : cp.coupling) mass += std::abs(c);
    if (std::max(std::abs(spec.ground_energy()), std::abs(spec.max_energy())) >
        mass + 1e-9)
        throw ConsistencyError("enumerate_spectrum: spectral width bound violated");

    return spec;
}

double low_energy_gap(const Spectrum& spectrum) {
    if (spectrum.levels.size() < 2)
        throw ConsistencyError("low_energy_gap: spectrum has a single level");
    return spectrum.levels[1].energy - spectrum.levels[0].energy;
}

IsingProblem make_problem(int n, std::vector<double> h,
                          const std::vector<Coupler>& couplers, double alpha) {
    std::vector<Coupler> canon = couplers;
    for (auto& c : canon)
        if (c.i > c.j) std::swap(c.i, c.j);
    std::sort(canon.begin(), canon.end(), [](const Coupler& a, const Coupler& b) {
        return std::pair{a.i, a.j} < std::pair{b.i, b.j};
    });
    std::vector<std::pair<int, int>> edges;
    std::vector<double> values;
    edges.reserve(canon.size());
    values.reserve(canon.size());
    for (const auto& c : canon) {
        edges.emplace_back(c.i, c.j);
        values.push_back(c.value);
    }
    return IsingProblem(ProblemGraph(n, std::move(edges)), std::move(h),
                        std::move(values), alpha);
}

IsingProblem reference_problem(double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("reference_problem: alpha must be positive");
    std::vector<double> h = {-0.25, -0.1, -0.25, 0.0, -0.1, 0.25, 0.0,
                             0.0,  -0.25, -0.1, -0.25, 0.0, 0.0, 0.25};
    const std::vector<Coupler> couplers = {
        {0, 4, -0.1}, {1, 4, -0.1},  {2, 4, -0.1},    {0, 5, 0.2},
        {1, 5, -0.25}, {2, 5, 0.2},  {4, 12, -0.1},   {8, 12, 0.2},
        {9, 12, -0.1}, {10, 12, -0.25}, {5, 13, 0.1}, {8, 13, 0.1},
        {9, 13, -0.25}, {10, 13, 0.2}};
    return make_problem(14, std::move(h), couplers, alpha);
}

}  // namespace qadis
