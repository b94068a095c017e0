#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "finnet/equilibria.hpp"
#include "finnet/fixtures.hpp"
#include "finnet/invariance.hpp"
#include "finnet/random_networks.hpp"

using namespace finnet;

TEST_CASE("candidate equilibria of the examples") {
    const ShiftedModel m2(fixtures::example2());
    const auto e0 = candidate_equilibrium(m2, OrthantIndex::healthy(4));
    CHECK(e0.consistent);
    CHECK(max_abs_diff(e0.x_bar, Vector(4, 5.0)) < 1e-9);
    const auto e15 = candidate_equilibrium(m2, OrthantIndex::failed(4));
    CHECK(e15.consistent);
    CHECK(max_abs_diff(e15.x_bar, Vector(4, -5.0)) < 1e-9);

    const ShiftedModel m1(fixtures::example1());
    const auto v = candidate_equilibrium(m1, OrthantIndex::healthy(2));
    CHECK(v.consistent);
    CHECK(max_abs_diff(v.v_bar, Vector{6, 6}) < 1e-9);
}

TEST_CASE("example 2 has exactly eight consistent equilibria") {
    const ShiftedModel m2(fixtures::example2());
    const auto eqs = consistent_equilibria(m2);
    REQUIRE(eqs.size() == 8);
    for (const auto& ref : fixtures::example2_equilibria()) {
        bool found = false;
        for (const auto& e : eqs) found = found || max_abs_diff(e.x_bar, ref) <= 1e-3;
        CHECK(found);
    }
}

TEST_CASE("example 1 has one equilibrium per quadrant") {
    const ShiftedModel m1(fixtures::example1());
    const auto all = enumerate_equilibria(m1);
    REQUIRE(all.size() == 4);
    const auto ref = fixtures::example1_equilibria();
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(all[k].consistent);
        CHECK(all[k].interior);
        CHECK(max_abs_diff(all[k].v_bar, ref[k]) < 1e-9);
    }
}

TEST_CASE("scalar network: only the healthy candidate is consistent") {
    FinancialNetwork net{Matrix{{0.0}}, Matrix{{1.0}}, {1.0}, {0.5}, {0.0}};
    const ShiftedModel model(net);
    const auto all = enumerate_equilibria(model);
    CHECK(all[0].consistent);
    CHECK(all[0].x_bar[0] == Catch::Approx(1.0));
    CHECK_FALSE(all[1].consistent);
    CHECK(all[1].x_bar[0] == Catch::Approx(0.5));
}

TEST_CASE("enumeration guard") {
    const std::size_t n = 25;
    Matrix C(n, n);
    FinancialNetwork net{C, Matrix::identity(n), Vector(n, 1.0), Vector(n, 1.0), Vector(n, 0.0)};
    CHECK_THROWS_AS(enumerate_equilibria(ShiftedModel(net)), DimensionTooLarge);
}

TEST_CASE("existence conditions") {
    const ShiftedModel m2(fixtures::example2());
    const auto rep = existence_conditions(m2);
    CHECK(rep.positive_exists);
    CHECK(rep.negative_exists);
    CHECK_FALSE(rep.positive_unique);
    CHECK_FALSE(rep.negative_unique);

    // C = 0, r = 1: the failed state r - beta exists exactly when beta > 1.
    FinancialNetwork costly{Matrix(2, 2, 0.0), Matrix::identity(2), {1, 1}, {2, 2}, {0, 0}};
    const auto r2 = existence_conditions(ShiftedModel(costly));
    CHECK(r2.positive_exists);
    CHECK(r2.negative_exists);
    CHECK_FALSE(r2.positive_unique);

    FinancialNetwork cheap{Matrix(2, 2, 0.0), Matrix::identity(2), {1, 1}, {0.5, 0.5}, {0, 0}};
    const auto r3 = existence_conditions(ShiftedModel(cheap));
    CHECK(r3.positive_unique);
    CHECK_FALSE(r3.negative_exists);
    CHECK(consistent_equilibria(ShiftedModel(cheap)).size() == 1);
}

TEST_CASE("existence report agrees with enumeration on random networks") {
    std::mt19937_64 rng(21);
    int unique_pos = 0, unique_neg = 0;
    for (int trial = 0; trial < 400; ++trial) {
        RandomNetworkOptions opts;
        opts.n = 2 + trial % 4;
        const ShiftedModel model(random_network(rng, opts));
        const auto rep = existence_conditions(model);
        if (rep.positive_unique) REQUIRE(rep.positive_exists);
        if (rep.negative_unique) REQUIRE(rep.negative_exists);
        const auto eqs = consistent_equilibria(model);

        std::set<std::uint64_t> seen;
        for (const auto& e : eqs) {
            REQUIRE(seen.insert(e.orthant.value()).second);
            REQUIRE(max_abs_diff(model.step(e.x_bar), e.x_bar) <= 1e-9);
        }
        const bool has_healthy = std::any_of(eqs.begin(), eqs.end(),
                                             [](const auto& e) { return e.orthant.is_healthy(); });
        REQUIRE(has_healthy == rep.positive_exists);
        if (rep.positive_unique) {
            ++unique_pos;
            REQUIRE(eqs.size() == 1);
            REQUIRE(eqs[0].orthant.is_healthy());
        }
        if (rep.negative_unique) {
            ++unique_neg;
            REQUIRE(eqs.size() == 1);
            REQUIRE(eqs[0].orthant.is_failed());
        }
    }
    CHECK(unique_pos + unique_neg > 0);
}

TEST_CASE("local stability: small perturbations return to the equilibrium") {
    const ShiftedModel m2(fixtures::example2());
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& e : consistent_equilibria(m2)) {
        const auto region = region_of_attraction(m2, e, 40);
        for (int trial = 0; trial < 20; ++trial) {
            Vector x = e.x_bar;
            for (double& v : x) v += 1e-3 * u(rng);
            if (!region.contains(x)) continue;
            const auto traj = simulate(m2, x, 400);
            CHECK(max_abs_diff(traj.back(), e.x_bar) <= 1e-9);
        }
    }
}
