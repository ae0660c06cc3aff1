#include <doctest.h>

#include <cmath>
#include <limits>

#include "qadis/rng.hpp"
#include "qadis/stats.hpp"
#include "test_support.hpp"

using namespace qadis;

namespace {

AlignedDistributionPair pair2(double p0, double p1, double q0, double q1) {
    return AlignedDistributionPair({0.0, 1.0}, {p0, p1}, {q0, q1});
}

// random probability vector over k outcomes
std::vector<double> random_simplex(std::uint64_t seed, std::size_t k) {
    std::vector<double> v(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        v[i] = rng::to_unit(rng::stream_word(seed, 3, i)) + 1e-12;
        sum += v[i];
    }
    for (double& x : v) x /= sum;
    return v;
}

LevelDistribution as_levels(const Spectrum& spec, const std::vector<double>& probs,
                            std::uint64_t total) {
    LevelDistribution out;
    out.total = total;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] <= 0.0) continue;
        LevelDistribution::Entry e;
        e.energy = spec.levels[k].energy;
        e.degeneracy = spec.levels[k].degeneracy;
        e.probability = probs[k];
        out.entries.push_back(e);
    }
    return out;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("kld basics") {
    CHECK(kld(pair2(0.5, 0.5, 0.5, 0.5)) == 0.0);
    CHECK(std::isinf(kld(pair2(1.0, 0.0, 0.0, 1.0))));
    // D((1/2,1/2) || (1/4,3/4)) = 1 - log2(3)/2
    const double expected = 1.0 - 0.5 * std::log2(3.0);
    CHECK(kld(pair2(0.5, 0.5, 0.25, 0.75)) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.20752).epsilon(1e-4));
}

TEST_CASE("jsd basics") {
    CHECK(jsd(pair2(0.3, 0.7, 0.3, 0.7)) == 0.0);
    CHECK(jsd(pair2(1.0, 0.0, 0.0, 1.0)) == doctest::Approx(1.0));
}

TEST_CASE("divergence axioms over random pairs") {
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        const std::size_t k = 2 + seed % 6;
        std::vector<double> support(k);
        for (std::size_t i = 0; i < k; ++i) support[i] = static_cast<double>(i);
        const auto p = random_simplex(seed * 2 + 1, k);
        const auto q = random_simplex(seed * 2 + 2, k);
        const AlignedDistributionPair pq(support, p, q);
        const AlignedDistributionPair qp(support, q, p);

        const double d = jsd(pq);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
        CHECK(d == doctest::Approx(jsd(qp)).epsilon(1e-12));

        double linf = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            linf = std::max(linf, std::abs(p[i] - q[i]));
        if (linf < 1e-12)
            CHECK(d < 1e-12);
        else
            CHECK(d > 0.0);

        CHECK(kld(pq) >= 0.0);  // Gibbs' inequality
    }
    // kld == 0 iff equal
    const auto p = random_simplex(1, 5);
    std::vector<double> support = {0, 1, 2, 3, 4};
    CHECK(kld(AlignedDistributionPair(support, p, p)) == doctest::Approx(0.0));
}

TEST_CASE("boltzmann distribution limits") {
    const auto spec = enumerate_spectrum(reference_problem(1.0));
    SUBCASE("beta = 0 is uniform over states") {
        const auto d = boltzmann_distribution(spec, 0.0);
        REQUIRE(d.entries.size() == spec.levels.size());
        for (std::size_t k = 0; k < d.entries.size(); ++k)
            CHECK(d.entries[k].probability ==
                  doctest::Approx(static_cast<double>(spec.levels[k].degeneracy) /
                                  1024.0)
                      .epsilon(1e-12));
    }
    SUBCASE("large beta concentrates on the ground level") {
        const auto d = boltzmann_distribution(spec, 1e3);
        CHECK(d.entries.front().probability == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("probabilities sum to one even at beta = 1e4") {
        const auto d = boltzmann_distribution(spec, 1e4);
        double sum = 0.0;
        for (const auto& e : d.entries) sum += e.probability;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        const auto dn = boltzmann_distribution(spec, -1e4);
        sum = 0.0;
        for (const auto& e : dn.entries) sum += e.probability;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("two-level closed form") {
    // levels {0, 1} nondegenerate, beta = ln 4 -> (0.8, 0.2)
    Spectrum spec;
    spec.n = 1;
    spec.active_count = 1;
    spec.alpha = 1.0;
    spec.levels.resize(2);
    spec.levels[0].energy = 0.0;
    spec.levels[0].degeneracy = 1;
    spec.levels[1].energy = 1.0;
    spec.levels[1].degeneracy = 1;
    const auto d = boltzmann_distribution(spec, std::log(4.0));
    CHECK(d.entries[0].probability == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(d.entries[1].probability == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("fit recovers beta on the reference spectrum") {
    const auto spec = enumerate_spectrum(reference_problem(0.1));
    for (double beta : {-5.0, 0.0, 0.1, 1.0, 10.0, 17.0}) {
        const auto model = boltzmann_distribution(spec, beta);
        const auto fit = fit_beta(model, spec);
        CHECK(std::abs(fit.beta - beta) < 1e-6);
        CHECK(std::abs(fit.mean_energy_residual) < 1e-9);
    }
}

TEST_CASE("uniform empirical gives beta = 0") {
    const auto spec = enumerate_spectrum(reference_problem(0.1));
    std::vector<double> probs(spec.levels.size());
    for (std::size_t k = 0; k < probs.size(); ++k)
        probs[k] = static_cast<double>(spec.levels[k].degeneracy) / 1024.0;
    const auto fit = fit_beta(as_levels(spec, probs, 1024), spec);
    CHECK(std::abs(fit.beta) < 1e-9);
}

TEST_CASE("multinomial sampling recovers beta within 2 percent") {
    const auto spec = enumerate_spectrum(reference_problem(0.1));
    for (double beta_star : {9.98, 17.0}) {
        const auto model = boltzmann_distribution(spec, beta_star);
        // multinomial draw via the deterministic uniform stream
        const std::uint64_t shots = 100000;
        std::vector<double> cdf;
        double acc = 0.0;
        for (const auto& e : model.entries) {
            acc += e.probability;
            cdf.push_back(acc);
        }
        std::vector<std::uint64_t> counts(cdf.size(), 0);
        rng::UniformStream stream(2718 + static_cast<std::uint64_t>(beta_star));
        for (std::uint64_t i = 0; i < shots; ++i) {
            const double u = stream.next() * acc;
            const std::size_t k = static_cast<std::size_t>(
                std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            ++counts[std::min(k, counts.size() - 1)];
        }
        std::vector<double> probs(counts.size());
        for (std::size_t k = 0; k < counts.size(); ++k)
            probs[k] = static_cast<double>(counts[k]) / static_cast<double>(shots);
        const auto fit = fit_beta(as_levels(spec, probs, shots), spec);
        CHECK(std::abs(fit.beta - beta_star) / beta_star < 0.02);
    }
}

TEST_CASE("unfittable distributions raise with the right sign") {
    const auto spec = enumerate_spectrum(reference_problem(0.1));
    LevelDistribution ground_only;
    ground_only.total = 10;
    ground_only.entries.push_back(
        {spec.levels[0].energy, spec.levels[0].degeneracy, 1.0});
    CHECK_THROWS_AS(fit_beta(ground_only, spec), UnfittableError);
    try {
        fit_beta(ground_only, spec);
    } catch (const UnfittableError& err) {
        CHECK(err.sign == +1);
    }
    LevelDistribution top_only;
    top_only.total = 10;
    top_only.entries.push_back(
        {spec.levels.back().energy, spec.levels.back().degeneracy, 1.0});
    try {
        fit_beta(top_only, spec);
    } catch (const UnfittableError& err) {
        CHECK(err.sign == -1);
    }
}

TEST_CASE("least-squares diagnostic lands near the ML fit on exact data") {
    const auto spec = enumerate_spectrum(reference_problem(0.1));
    const auto model = boltzmann_distribution(spec, 7.5);
    const auto ml = fit_beta(model, spec);
    const auto lsq = fit_beta_least_squares(model, spec);
    CHECK(std::abs(ml.beta - 7.5) < 1e-6);
    CHECK(std::abs(lsq.beta - 7.5) < 1e-6);
}

TEST_CASE("align merges and zero-fills supports") {
    LevelDistribution a;
    a.total = 4;
    a.entries.push_back({-1.0, 1, 0.75});
    a.entries.push_back({0.0, 2, 0.25});
    LevelDistribution b;
    b.total = 4;
    b.entries.push_back({0.0, 2, 0.5});
    b.entries.push_back({2.0, 1, 0.5});

    SUBCASE("identical inputs align to p = q") {
        const auto pair = align(a, a);
        CHECK(pair.p == pair.q);
        CHECK(jsd(pair) == 0.0);
    }
    SUBCASE("union support with interleaved zeros") {
        const auto pair = align(a, b);
        REQUIRE(pair.support.size() == 3);
        CHECK(pair.support[0] == -1.0);
        CHECK(pair.p[0] == 0.75);
        CHECK(pair.q[0] == 0.0);
        CHECK(pair.p[1] == 0.25);
        CHECK(pair.q[1] == 0.5);
        CHECK(pair.p[2] == 0.0);
        CHECK(pair.q[2] == 0.5);
    }
    SUBCASE("disjoint single-level inputs are maximally divergent") {
        LevelDistribution c;
        c.total = 1;
        c.entries.push_back({-1.0, 1, 1.0});
        LevelDistribution d;
        d.total = 1;
        d.entries.push_back({2.0, 1, 1.0});
        const auto pair = align(c, d);
        CHECK(jsd(pair) == doctest::Approx(1.0));
    }
    SUBCASE("ambiguous spacing is rejected") {
        LevelDistribution tight;
        tight.total = 2;
        tight.entries.push_back({0.0, 1, 0.5});
        tight.entries.push_back({1e-12, 1, 0.5});
        CHECK_THROWS_AS(align(tight, a), ConsistencyError);
    }
}

}  // TEST_SUITE
