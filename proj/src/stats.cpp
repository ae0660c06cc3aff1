#include "qadis/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qadis {
namespace {

void check_probability_vector(const std::vector<double>& v, const char* name) {
    double sum = 0.0;
    for (double x : v) {
        if (x < 0.0 || !std::isfinite(x))
            throw std::invalid_argument(std::string(name) +
                                        ": probabilities must be finite and >= 0");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(name) +
                                    ": probabilities must sum to 1");
}

// Degeneracy-weighted Boltzmann level probabilities, exponent-shifted.
std::vector<double> level_probabilities(const Spectrum& spectrum, double beta) {
    std::vector<double> logw(spectrum.levels.size());
    double wmax = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < spectrum.levels.size(); ++k) {
        logw[k] = std::log(static_cast<double>(spectrum.levels[k].degeneracy)) -
                  beta * spectrum.levels[k].energy;
        wmax = std::max(wmax, logw[k]);
    }
    double z = 0.0;
    for (double& w : logw) {
        w = std::exp(w - wmax);
        z += w;
    }
    for (double& w : logw) w /= z;
    return logw;
}

double model_mean_energy(const Spectrum& spectrum, double beta) {
    const auto p = level_probabilities(spectrum, beta);
    double m = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
        m += p[k] * spectrum.levels[k].energy;
    return m;
}

// Match every occupied level of the empirical distribution onto the spectrum
// and return (level index, probability) pairs.
std::vector<std::pair<std::size_t, double>> match_levels(
    const LevelDistribution& empirical, const Spectrum& spectrum) {
    const double tol =
        1e-9 * (1.0 + std::max(std::abs(spectrum.ground_energy()),
                               std::abs(spectrum.max_energy())));
    std::vector<std::pair<std::size_t, double>> out;
    for (const auto& entry : empirical.entries) {
        std::size_t best = 0;
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < spectrum.levels.size(); ++k) {
            const double d = std::abs(spectrum.levels[k].energy - entry.energy);
            if (d < dist) {
                dist = d;
                best = k;
            }
        }
        if (dist > tol)
            throw ConsistencyError(
                "fit_beta: empirical level " + std::to_string(entry.energy) +
                " is not a spectrum level");
        out.emplace_back(best, entry.probability);
    }
    return out;
}

BoltzmannFit finish_fit(const LevelDistribution& empirical, const Spectrum& spectrum,
                        double beta) {
    const auto matched = match_levels(empirical, spectrum);
    const auto model = level_probabilities(spectrum, beta);
    BoltzmannFit fit;
    fit.beta = beta;
    fit.support_size = matched.size();
    fit.mean_energy_residual =
        model_mean_energy(spectrum, beta) - empirical.mean_energy();
    double ll = 0.0;
    for (const auto& [k, prob] : matched) {
        const double n_k = prob * static_cast<double>(empirical.total);
        if (n_k > 0.0) ll += n_k * std::log(model[k]);
    }
    fit.log_likelihood = ll;
    return fit;
}

}  // namespace

AlignedDistributionPair::AlignedDistributionPair(std::vector<double> support_,
                                                 std::vector<double> p_,
                                                 std::vector<double> q_)
    : support(std::move(support_)), p(std::move(p_)), q(std::move(q_)) {
    if (support.size() != p.size() || support.size() != q.size())
        throw std::invalid_argument(
            "AlignedDistributionPair: support and probability lengths differ");
    if (support.empty())
        throw std::invalid_argument("AlignedDistributionPair: empty support");
    if (!std::is_sorted(support.begin(), support.end()))
        throw std::invalid_argument("AlignedDistributionPair: support not ascending");
    check_probability_vector(p, "AlignedDistributionPair");
    check_probability_vector(q, "AlignedDistributionPair");
}

double kld(const AlignedDistributionPair& pair) {
    double acc = 0.0;
    for (std::size_t i = 0; i < pair.p.size(); ++i) {
        if (pair.p[i] == 0.0) continue;
        if (pair.q[i] == 0.0) return std::numeric_limits<double>::infinity();
        acc += pair.p[i] * std::log2(pair.p[i] / pair.q[i]);
    }
    return acc;
}

double jsd(const AlignedDistributionPair& pair) {
    double acc = 0.0;
    for (std::size_t i = 0; i < pair.p.size(); ++i) {
        const double m = 0.5 * (pair.p[i] + pair.q[i]);
        if (pair.p[i] > 0.0) acc += 0.5 * pair.p[i] * std::log2(pair.p[i] / m);
        if (pair.q[i] > 0.0) acc += 0.5 * pair.q[i] * std::log2(pair.q[i] / m);
    }
    // Clip the tiny negative rounding residue near identical inputs.
    return std::clamp(acc, 0.0, 1.0);
}

LevelDistribution boltzmann_distribution(const Spectrum& spectrum, double beta) {
    if (!std::isfinite(beta))
        throw std::invalid_argument("boltzmann_distribution: beta must be finite");
    const auto p = level_probabilities(spectrum, beta);
    LevelDistribution out;
    out.total = std::uint64_t{1} << 30;  // nominal; probabilities carry the mass
    for (std::size_t k = 0; k < p.size(); ++k) {
        LevelDistribution::Entry entry;
        entry.energy = spectrum.levels[k].energy;
        entry.degeneracy = spectrum.levels[k].degeneracy;
        entry.probability = p[k];
        out.entries.push_back(entry);
    }
    return out;
}

BoltzmannFit fit_beta(const LevelDistribution& empirical, const Spectrum& spectrum) {
    match_levels(empirical, spectrum);  // validates support containment
    const double target = empirical.mean_energy();
    const double e_min = spectrum.ground_energy();
    const double e_max = spectrum.max_energy();
    if (target <= e_min)
        throw UnfittableError("fit_beta: empirical mean at or below the ground "
                              "level; beta -> +infinity",
                              +1);
    if (target >= e_max)
        throw UnfittableError("fit_beta: empirical mean at or above the top "
                              "level; beta -> -infinity",
                              -1);
    if (spectrum.levels.size() < 2)
        throw UnfittableError("fit_beta: single-level spectrum", +1);

    // Model mean energy is strictly decreasing in beta; expand the bracket
    // geometrically until it straddles the target, then bisect.
    double lo = -1.0;
    double hi = 1.0;
    int guard = 0;
    while (model_mean_energy(spectrum, lo) < target) {
        lo *= 2.0;
        if (++guard > 200)
            throw ConvergenceError("fit_beta: bracket expansion failed (low side)");
    }
    guard = 0;
    while (model_mean_energy(spectrum, hi) > target) {
        hi *= 2.0;
        if (++guard > 200)
            throw ConvergenceError("fit_beta: bracket expansion failed (high side)");
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (model_mean_energy(spectrum, mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return finish_fit(empirical, spectrum, 0.5 * (lo + hi));
}

BoltzmannFit fit_beta_least_squares(const LevelDistribution& empirical,
                                    const Spectrum& spectrum) {
    const auto matched = match_levels(empirical, spectrum);
    std::vector<std::pair<std::size_t, double>> occupied;
    for (const auto& m : matched)
        if (m.second > 0.0) occupied.push_back(m);
    if (occupied.size() < 2)
        throw UnfittableError(
            "fit_beta_least_squares: need at least two occupied levels", +1);

    auto residual = [&](double beta) {
        const auto model = level_probabilities(spectrum, beta);
        double acc = 0.0;
        for (const auto& [k, prob] : occupied) {
            const double r = std::log(prob) - std::log(model[k]);
            acc += r * r;
        }
        return acc;
    };

    // Golden-section search over an expanding bracket.
    double lo = -64.0;
    double hi = 64.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - gr * (hi - lo);
    double b = lo + gr * (hi - lo);
    double fa = residual(a);
    double fb = residual(b);
    for (int iter = 0; iter < 400 && hi - lo > 1e-10; ++iter) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - gr * (hi - lo);
            fa = residual(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + gr * (hi - lo);
            fb = residual(b);
        }
    }
    return finish_fit(empirical, spectrum, 0.5 * (lo + hi));
}

AlignedDistributionPair align(const LevelDistribution& a, const LevelDistribution& b,
                              double tol) {
    auto check_spacing = [&](const LevelDistribution& d, const char* name) {
        for (std::size_t k = 1; k < d.entries.size(); ++k)
            if (d.entries[k].energy - d.entries[k - 1].energy <= tol)
                throw ConsistencyError(std::string("align: two levels of ") + name +
                                       " are within the alignment tolerance");
    };
    check_spacing(a, "the first input");
    check_spacing(b, "the second input");

    std::vector<double> support;
    std::vector<double> p;
    std::vector<double> q;
    std::size_t ia = 0;
    std::size_t ib = 0;
    while (ia < a.entries.size() || ib < b.entries.size()) {
        const bool take_a =
            ib == b.entries.size() ||
            (ia < a.entries.size() &&
             a.entries[ia].energy <= b.entries[ib].energy + tol);
        const bool take_b =
            ia == a.entries.size() ||
            (ib < b.entries.size() &&
             b.entries[ib].energy <= a.entries[ia].energy + tol);
        if (take_a && take_b) {
            support.push_back(a.entries[ia].energy);
            p.push_back(a.entries[ia].probability);
            q.push_back(b.entries[ib].probability);
            ++ia;
            ++ib;
        } else if (take_a) {
            support.push_back(a.entries[ia].energy);
            p.push_back(a.entries[ia].probability);
            q.push_back(0.0);
            ++ia;
        } else {
            support.push_back(b.entries[ib].energy);
            p.push_back(0.0);
            q.push_back(b.entries[ib].probability);
            ++ib;
        }
    }
    return AlignedDistributionPair(std::move(support), std::move(p), std::move(q));
}

}  // namespace qadis
