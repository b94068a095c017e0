#include <catch_amalgamated.hpp>

#include <random>

#include "finnet/equilibria.hpp"
#include "finnet/fixtures.hpp"
#include "finnet/invariance.hpp"
#include "finnet/random_networks.hpp"

using namespace finnet;

TEST_CASE("healthy and failed orthant conditions") {
    CHECK(orthant0_invariant(fixtures::example1()));
    CHECK(orthant0_invariant(fixtures::example2()));
    auto scaled_lower = fixtures::example1();
    scaled_lower.thresholds = {50, 50};
    CHECK_FALSE(orthant0_invariant(scaled_lower));

    CHECK(last_orthant_invariant(fixtures::example1()));
    CHECK(last_orthant_invariant(fixtures::example2()));
    auto cheap = fixtures::example1();
    cheap.failure_costs = {0.4, 0.4};  // r = 0.5 > 0.4
    CHECK_FALSE(last_orthant_invariant(cheap));
}

TEST_CASE("intermediate orthants") {
    const ShiftedModel m3(fixtures::example3());
    for (std::uint64_t k : {1u, 100u, 1022u})
        CHECK(intermediate_not_invariant(m3, OrthantIndex(k, 10)).verdict == Verdict::NotInvariant);

    const ShiftedModel m1(fixtures::example1());
    CHECK(intermediate_not_invariant(m1, OrthantIndex(1, 2)).verdict == Verdict::NotInvariant);

    const ShiftedModel m2(fixtures::example2());
    const auto v = intermediate_not_invariant(m2, OrthantIndex(5, 4));
    CHECK(v.verdict == Verdict::Unknown);
    REQUIRE(v.escape_witness);
    CHECK(in_orthant(*v.escape_witness, OrthantIndex(5, 4)));
    CHECK_FALSE(in_orthant(m2.step(*v.escape_witness), OrthantIndex(5, 4)));

    CHECK_THROWS_AS(intermediate_not_invariant(m2, OrthantIndex(0, 4)), std::invalid_argument);
}

TEST_CASE("finite determination index of the examples") {
    const ShiftedModel m1(fixtures::example1()), m2(fixtures::example2());
    CHECK(finite_determination_index(m1, OrthantIndex::healthy(2)) == 1);
    CHECK(finite_determination_index(m1, OrthantIndex::failed(2)) == 1);
    CHECK(finite_determination_index(m2, OrthantIndex::healthy(4)) == 1);
    CHECK(finite_determination_index(m2, OrthantIndex::failed(4)) == 1);
    CHECK_THROWS_AS(finite_determination_index(m1, OrthantIndex(1, 2)), std::invalid_argument);
}

TEST_CASE("region of attraction rows") {
    const ShiftedModel m1(fixtures::example1());
    const auto eq = candidate_equilibrium(m1, OrthantIndex::healthy(2));
    const auto p0 = region_of_attraction(m1, eq, 0);
    REQUIRE(p0.row_count() == 2);
    CHECK(p0.A() == Matrix::identity(2));
    CHECK(p0.b() == Vector{0, 0});

    const auto p1 = region_of_attraction(m1, eq, 1);
    REQUIRE(p1.row_count() == 4);
    CHECK(p1.blocks() == std::vector<std::size_t>{0, 0, 1, 1});
    // Row block 1: C x >= (C - I) x_bar = -(0.5, 0.5).
    CHECK(p1.b()[2] == Catch::Approx(-0.5));
    CHECK(p1.contains(Vector{0.5, 0.5}));
    const auto traj = simulate(m1, Vector{0.5, 0.5}, 30);
    for (const auto& x : traj.states) CHECK(in_orthant(x, OrthantIndex::healthy(2)));
}

TEST_CASE("example 1 quadrant boxes") {
    const ShiftedModel m1(fixtures::example1());
    const auto eqs = enumerate_equilibria(m1);
    // k = 1: bank 2 failed, 5 <= V1 <= 6 and 4 <= V2 <= 5; k = 2 mirrored.
    const double want[3][4] = {{}, {5, 6, 4, 5}, {4, 5, 5, 6}};
    for (std::size_t k = 1; k <= 2; ++k) {
        const auto reg = stabilized_region(m1, eqs[k]);
        REQUIRE(reg.stabilized);
        const auto box = bounding_box(reg.region);
        for (std::size_t i = 0; i < 2; ++i) {
            REQUIRE(box[i].first);
            REQUIRE(box[i].second);
            CHECK(*box[i].first + 5.0 == Catch::Approx(want[k][2 * i]).margin(1e-6));
            CHECK(*box[i].second + 5.0 == Catch::Approx(want[k][2 * i + 1]).margin(1e-6));
        }
    }
}

TEST_CASE("maximal invariant region of example 1 is the whole healthy orthant") {
    const ShiftedModel m1(fixtures::example1());
    const auto mplus = maximal_invariant_region(m1, OrthantIndex::healthy(2));
    CHECK(mplus.certified);
    Polyhedron orthant(Matrix::identity(2), Vector{0, 0});
    CHECK(equivalent(mplus, orthant));
}

TEST_CASE("tau and tau + 1 regions coincide") {
    for (const auto& net : {fixtures::example1(), fixtures::example2(), fixtures::example3()}) {
        const ShiftedModel model(net);
        for (auto k : {OrthantIndex::healthy(model.size()), OrthantIndex::failed(model.size())}) {
            const auto eq = candidate_equilibrium(model, k);
            if (!eq.consistent) continue;
            const auto tau = finite_determination_index(model, k);
            CHECK(equivalent(region_of_attraction(model, eq, tau),
                             region_of_attraction(model, eq, tau + 1)));
        }
    }
}

TEST_CASE("M+ contains the healthy equilibrium and is one-step invariant") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        RandomNetworkOptions opts;
        opts.n = 2 + trial % 4;
        opts.require_healthy_equilibrium = true;
        const ShiftedModel model(random_network(rng, opts));
        const auto eq = candidate_equilibrium(model, OrthantIndex::healthy(opts.n));
        const auto mplus = maximal_invariant_region(model, OrthantIndex::healthy(opts.n));
        REQUIRE(mplus.contains(eq.x_bar, 1e-9));
        std::uniform_real_distribution<double> u(0.0, 3.0 * (1.0 + norm_inf(eq.x_bar)));
        for (int s = 0; s < 200; ++s) {
            Vector x(opts.n);
            for (double& v : x) v = u(rng);
            if (!mplus.contains(x)) continue;
            REQUIRE(mplus.contains(model.step(x), 1e-9));
        }
    }
}

TEST_CASE("when the healthy orthant is invariant, M+ is the orthant") {
    std::mt19937_64 rng(32);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 10; ++trial) {
        RandomNetworkOptions opts;
        opts.n = 3;
        const auto net = random_network(rng, opts);
        if (!orthant0_invariant(net)) continue;
        ++tested;
        const ShiftedModel model(net);
        const auto mplus = maximal_invariant_region(model, OrthantIndex::healthy(3));
        std::uniform_real_distribution<double> u(-1.0, 5.0);
        for (int s = 0; s < 200; ++s) {
            Vector x(3);
            for (double& v : x) v = u(rng);
            CHECK(mplus.contains(x) == in_orthant(x, OrthantIndex::healthy(3)));
        }
    }
    CHECK(tested > 0);
}

TEST_CASE("redundancy pruning keeps the set") {
    const ShiftedModel m2(fixtures::example2());
    const auto eq = candidate_equilibrium(m2, OrthantIndex::healthy(4));
    const auto p = region_of_attraction(m2, eq, 3);
    const auto pruned = prune_redundant(p);
    CHECK(pruned.row_count() <= p.row_count());
    CHECK(equivalent(p, pruned));
}

TEST_CASE("invariance report for example 2") {
    const ShiftedModel m2(fixtures::example2());
    const auto rep = invariance_report(m2);
    CHECK(rep.orthant0_invariant);
    CHECK(rep.last_orthant_invariant);
    CHECK(rep.intermediate.size() == 14);
    for (const auto& [k, v] : rep.intermediate) CHECK(v.verdict == Verdict::Unknown);
}
