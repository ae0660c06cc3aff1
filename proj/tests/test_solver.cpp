#include <doctest.h>

#include <bit>
#include <cmath>

#include "qadis/disorder.hpp"
#include "qadis/solver.hpp"
#include "test_support.hpp"

using namespace qadis;

TEST_SUITE("solver") {

TEST_CASE("single spin aligns against the field sign") {
    const auto p = make_problem(1, {-0.5}, {}, 1.0);
    const auto r = ground_state(p);
    REQUIRE(r.configs.size() == 1);
    CHECK(r.configs[0].bits == 0);  // s_0 = +1
    CHECK(r.energy == doctest::Approx(-0.5));
}

TEST_CASE("null problem ties every configuration") {
    const auto p = test::null_problem(4);
    const auto r = ground_state(p);
    CHECK(r.energy == 0.0);
    REQUIRE(r.configs.size() == 16);
    for (std::uint32_t bits = 0; bits < 16; ++bits)
        CHECK(r.configs[bits].bits == bits);  // ascending by bit pattern
}

TEST_CASE("ferromagnetic pair ties both aligned configurations") {
    const auto p = make_problem(2, {0.0, 0.0}, {{0, 1, -1.0}}, 1.0);
    const auto r = ground_state(p);
    CHECK(r.energy == doctest::Approx(-1.0));
    REQUIRE(r.configs.size() == 2);
    CHECK(r.configs[0].bits == 0b00);
    CHECK(r.configs[1].bits == 0b11);
    const auto rn = ground_state_naive(p);
    CHECK(rn.energy == r.energy);
    REQUIRE(rn.configs.size() == 2);
}

TEST_CASE("reference ground state is the unique Table-1 dominant row") {
    const auto r4 = ground_state(reference_problem(4.0), 1e-9);
    REQUIRE(r4.configs.size() == 1);
    CHECK(r4.energy == doctest::Approx(-10.6).epsilon(1e-12));

    const auto r1 = ground_state_naive(reference_problem(1.0), 1e-9);
    CHECK(r1.energy == doctest::Approx(-10.6 / 4.0).epsilon(1e-12));
    CHECK(r1.configs[0].bits == r4.configs[0].bits);
}

TEST_CASE("differential: gray-code solver equals the naive oracle") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const int n = 2 + static_cast<int>(seed % 11);
        const auto p = test::random_problem(seed, n);
        const auto fast = ground_state(p);
        const auto slow = ground_state_naive(p);
        REQUIRE(fast.configs.size() == slow.configs.size());
        CHECK(fast.energy == slow.energy);
        for (std::size_t k = 0; k < fast.configs.size(); ++k)
            CHECK(fast.configs[k].bits == slow.configs[k].bits);
    }
}

TEST_CASE("delta updates stay within 1e-10 of direct evaluation over a full walk") {
    const int n = 20;
    const auto p = test::random_problem(123, n);
    const auto cp = detail::compact(p);
    REQUIRE(cp.count() == n);

    std::vector<double> spin(n, 1.0);
    double e = 0.0;
    for (double f : cp.field) e += f;
    for (double c : cp.coupling) e += c;
    std::uint32_t word = 0;
    double worst = 0.0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t t = 1; t < total; ++t) {
        const int k = std::countr_zero(t);
        double local = cp.field[k];
        for (const auto& [other, eidx] : cp.adjacency[k])
            local += cp.coupling[eidx] * spin[other];
        e -= 2.0 * spin[k] * local;
        spin[k] = -spin[k];
        word ^= (1u << k);
        if ((t & 0xFFFF) == 0)
            worst = std::max(worst, std::abs(e - test::direct_energy(p, word)));
    }
    worst = std::max(worst, std::abs(e - test::direct_energy(p, word)));
    CHECK(worst < 1e-10);
}

TEST_CASE("solver minimum equals the spectrum minimum") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto p = test::random_problem(seed, 9);
        const auto r = ground_state(p);
        const auto spec = enumerate_spectrum(p);
        CHECK(std::abs(r.energy - spec.ground_energy()) < 1e-10);
    }
}

TEST_CASE("disordered realizations solve identically through both paths") {
    const auto p = reference_problem(0.1);
    const auto cp = detail::compact(p);
    const DisorderParams params(0.05, 0.035);
    std::vector<double> field, coupling;
    for (std::uint64_t i = 0; i < 50; ++i) {
        detail::perturb_compact(cp, params, {314, i}, field, coupling);
        const auto fast = detail::minimize_compact(cp, field, coupling);
        const auto full = ground_state(perturb(p, params, {314, i}));
        REQUIRE(full.configs.size() == 1);
        CHECK(cp.expand(fast.word).bits == full.configs[0].bits);
        CHECK(fast.energy == doctest::Approx(full.energy).epsilon(1e-12));
    }
}

TEST_CASE("capability guards") {
    CHECK_THROWS_AS(ground_state(test::random_problem(5, 27)), CapabilityError);
    CHECK_THROWS_AS(ground_state_naive(test::random_problem(5, 21)),
                    CapabilityError);
    CHECK_THROWS_AS(ground_state(test::random_problem(5, 5), -1.0),
                    std::invalid_argument);
}

}  // TEST_SUITE
