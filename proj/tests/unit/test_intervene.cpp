#include <catch_amalgamated.hpp>

#include <random>

#include "finnet/fixtures.hpp"
#include "finnet/intervene.hpp"
#include "finnet/invariance.hpp"
#include "finnet/random_networks.hpp"
#include "oracles.hpp"

using namespace finnet;

namespace {

Polyhedron quadrant() { return Polyhedron(Matrix::identity(2), Vector{0, 0}); }

}  // namespace

TEST_CASE("injection into the healthy quadrant") {
    const auto a = minimal_injection(quadrant(), Vector{-3.0, -3.0});
    CHECK(a.objective == Catch::Approx(6.0));
    CHECK(a.margin >= -1e-12);

    // Free injection may withdraw from a healthy node.
    const auto b = minimal_injection(quadrant(), Vector{-1.0, 2.0});
    CHECK(b.objective == Catch::Approx(-1.0));
    CHECK(b.v[1] == Catch::Approx(-2.0));

    const auto c = minimal_injection(quadrant(), Vector{-1.0, 2.0}, true);
    CHECK(c.objective == Catch::Approx(1.0));
    CHECK(c.v[0] == Catch::Approx(1.0));
    CHECK(c.v[1] == Catch::Approx(0.0).margin(1e-12));
    CHECK(c.certificate_residual < 1e-9);
}

TEST_CASE("injection failures") {
    Polyhedron empty(Matrix{{1.0, 0.0}, {-1.0, 0.0}}, Vector{1.0, 0.0});
    CHECK_THROWS_AS(minimal_injection(empty, Vector{0.0, 0.0}), InfeasibleProblem);
    Polyhedron half(Matrix{{1.0, 1.0}}, Vector{0.0});
    // v_2 is unconstrained, so the cost has no lower bound.
    Polyhedron slab(Matrix{{1.0, 0.0}}, Vector{0.0});
    CHECK_THROWS_AS(minimal_injection(slab, Vector{0.0, 0.0}), ModelError);
    CHECK(minimal_injection(half, Vector{-2.0, 0.5}).objective == Catch::Approx(1.5));
    CHECK_THROWS_AS(minimal_injection(quadrant(), Vector{0.0}), DimensionMismatch);
}

TEST_CASE("injection LP agrees with vertex enumeration") {
    std::mt19937_64 rng(41);
    int compared = 0;
    for (int trial = 0; trial < 40; ++trial) {
        RandomNetworkOptions opts;
        opts.n = 2;
        opts.require_healthy_equilibrium = true;
        const ShiftedModel model(random_network(rng, opts));
        const auto target = maximal_invariant_region(model, OrthantIndex::healthy(2));
        std::uniform_real_distribution<double> u(-3.0, 1.0);
        const Vector x{u(rng), u(rng)};
        const auto got = minimal_injection(target, x);

        LinearProgram lp;
        lp.objective = {1.0, 1.0};
        lp.constraints = target.A();
        lp.bounds = sub(target.b(), target.A() * x);
        const auto want = oracle::vertex_enumeration(lp);
        REQUIRE(want);
        CHECK(got.objective == Catch::Approx(*want).margin(1e-8));
        CHECK(target.contains(add(x, got.v), 1e-9));
        ++compared;
    }
    CHECK(compared == 40);
}

TEST_CASE("reallocation is feasible and matches a grid search") {
    const ShiftedModel m1(fixtures::example1());
    for (const Vector& v : {Vector{3.0, 3.0}, Vector{1.0, 4.0}, Vector{0.5, 0.5}}) {
        const auto res = asset_reallocation(m1, v);
        CHECK(res.column_excess < 1e-8);
        CHECK(res.negativity < 1e-8);
        CHECK(res.threshold_shortfall < 1e-8);
        const auto grid = oracle::reallocation_grid(m1, v, ReallocationOptions{}.epsilon);
        REQUIRE(grid.found);
        // The grid only bounds the minimum from above.
        CHECK(res.objective <= grid.value + 1e-2);
    }
}

TEST_CASE("projection lands in the feasible set") {
    const ShiftedModel m1(fixtures::example1());
    Matrix D{{2.0, -1.0}, {0.3, 0.9}};
    project_reallocation(m1, D, 1e-6);
    ReallocationResult r;
    reallocation_residuals(m1, D, 1e-6, r);
    CHECK(r.column_excess < 1e-8);
    CHECK(r.negativity < 1e-8);
    CHECK(r.threshold_shortfall < 1e-8);
}

TEST_CASE("reallocation reports infeasibility") {
    auto net = fixtures::example1();
    net.thresholds = {20.0, 20.0};  // needs D p beyond what unit columns allow
    CHECK_THROWS_AS(asset_reallocation(ShiftedModel(net), Vector{1.0, 1.0}), InfeasibleProblem);
}

TEST_CASE("closed loop from inside M+ does nothing") {
    const ShiftedModel m1(fixtures::example1());
    const auto plan = drive_to_invariant(m1, Vector{0.5, 2.0});
    CHECK(plan.success);
    CHECK(plan.iterations() == 0);
    CHECK(plan.final_state() == Vector{0.5, 2.0});
}

TEST_CASE("closed loop on example 1 from both banks failed") {
    const ShiftedModel m1(fixtures::example1());
    const auto plan = drive_to_invariant(m1, Vector{-3.0, -3.0});
    CHECK(plan.success);
    CHECK_FALSE(plan.iteration_cap_reached);
    CHECK(plan.iterations() >= 1);
    CHECK(plan.target.contains(plan.final_state(), 1e-9));
    CHECK(plan.initial_v[0] == Catch::Approx(3.0));
    for (const auto& s : plan.steps) CHECK(s.feasible);
}

TEST_CASE("closed loop on example 3 random states") {
    const ShiftedModel m3(fixtures::example3());
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto x0 = fixtures::example3_random_state(seed);
        const auto plan = drive_to_invariant(m3, x0);
        CHECK(plan.success);
        CHECK(plan.iterations() <= 1000);
        CHECK(plan.target.contains(plan.final_state(), 1e-9));
    }
}

TEST_CASE("clamped update and nonnegative injection") {
    const ShiftedModel m1(fixtures::example1());
    InterventionOptions opts;
    opts.clamped_update = true;
    opts.nonnegative_injection = true;
    const auto plan = drive_to_invariant(m1, Vector{-3.0, 1.0}, opts);
    CHECK(plan.success);
    for (double v : plan.initial_v) CHECK(v >= -1e-12);
    for (const auto& s : plan.steps)
        for (double v : s.v) CHECK(v >= 0.0);
}
