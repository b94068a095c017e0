#include <catch_amalgamated.hpp>

#include <random>

#include "finnet/invariance.hpp"
#include "finnet/robust.hpp"

using namespace finnet;

namespace {

Matrix pair_matrix(double c) { return Matrix{{0.0, c}, {c, 0.0}}; }

IntervalNetwork symmetric_pair(double lo, double hi, Vector r) {
    return {pair_matrix(lo), pair_matrix(hi), std::move(r)};
}

bool any_negative(const Vector& x) {
    for (double v : x)
        if (v < 0.0) return true;
    return false;
}

}  // namespace

TEST_CASE("extremal fixed points") {
    const auto inet = symmetric_pair(0.2, 0.5, {1.0, 1.0});
    const auto [lo, hi] = extremal_fixed_points(inet);
    CHECK(lo[0] == Catch::Approx(1.25));
    CHECK(lo[1] == Catch::Approx(1.25));
    CHECK(hi[0] == Catch::Approx(2.0));
    CHECK(hi[1] == Catch::Approx(2.0));
}

TEST_CASE("interval validation") {
    CHECK(validate(symmetric_pair(0.2, 0.5, {1, 1})).empty());
    CHECK_FALSE(validate(symmetric_pair(0.5, 0.2, {1, 1})).empty());
    CHECK_FALSE(validate(symmetric_pair(0.2, 1.2, {1, 1})).empty());
    CHECK_FALSE(validate(symmetric_pair(-0.1, 0.5, {1, 1})).empty());
    CHECK_FALSE(validate(symmetric_pair(0.2, 0.5, {1, 1, 1})).empty());
    auto diag = symmetric_pair(0.2, 0.5, {1, 1});
    diag.c_upper(0, 0) = 0.1;
    CHECK_FALSE(validate(diag).empty());
    CHECK_THROWS_AS(require_valid(symmetric_pair(0.5, 0.2, {1, 1})), ModelError);
}

TEST_CASE("collapsed interval reduces to the nominal system") {
    const Vector r{1.0, -0.1};
    const auto inet = symmetric_pair(0.3, 0.3, r);
    const auto rep = robust_report(inet);
    CHECK(max_abs_diff(rep.x_minus_bar, rep.x_plus_bar) < 1e-12);
    CHECK(equivalent(rep.robust_set, rep.last_hope));
    const auto nominal = maximal_invariant_region(linear_model(pair_matrix(0.3), r),
                                                  OrthantIndex::healthy(2));
    CHECK(equivalent(rep.robust_set, nominal));
}

TEST_CASE("robust set is nested in the last-hope set") {
    const auto inet = symmetric_pair(0.2, 0.5, {1.0, -0.1});
    const auto rep = robust_report(inet);
    CHECK(subset_of(rep.robust_set, rep.last_hope));
    CHECK(rep.robust_set.contains(rep.x_minus_bar, 1e-9));
    CHECK(rep.last_hope.contains(rep.x_plus_bar, 1e-9));
}

TEST_CASE("robust set keeps every switching sequence healthy") {
    const auto inet = symmetric_pair(0.2, 0.5, {1.0, -0.1});
    const auto robust = robust_invariant_set(inet);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    int inside = 0;
    for (int s = 0; s < 300; ++s) {
        Vector x{u(rng), u(rng)};
        if (!robust.contains(x)) continue;
        ++inside;
        auto sampler = SwitchingSampler::iid_uniform(static_cast<std::uint64_t>(s));
        for (int t = 0; t < 200; ++t) {
            x = add(sampler.next(inet) * x, inet.r);
            REQUIRE_FALSE(any_negative(x));
        }
    }
    CHECK(inside > 20);
}

TEST_CASE("sandwich bounds order the switched trajectory") {
    const auto inet = symmetric_pair(0.2, 0.5, {1.0, -0.1});
    const auto robust = robust_invariant_set(inet);
    const Vector x0{1.5, 0.8};
    REQUIRE(robust.contains(x0));
    for (auto sampler : {SwitchingSampler::iid_uniform(3), SwitchingSampler::constant_lower(),
                         SwitchingSampler::constant_upper(),
                         SwitchingSampler::user_sequence({pair_matrix(0.2), pair_matrix(0.5),
                                                          pair_matrix(0.35)})}) {
        const auto res = sandwich_bounds(inet, x0, 150, sampler);
        CHECK(res.ordered);
        CHECK(res.actual.size() == 151);
        CHECK(max_abs_diff(res.lower.back(), res.x_minus_bar) < 1e-9);
        CHECK(max_abs_diff(res.upper.back(), res.x_plus_bar) < 1e-9);
    }
}

TEST_CASE("user sequence outside the interval is rejected") {
    const auto inet = symmetric_pair(0.2, 0.5, {1.0, 1.0});
    auto sampler = SwitchingSampler::user_sequence({pair_matrix(0.6)});
    CHECK_THROWS_AS(sampler.next(inet), ModelError);
}

TEST_CASE("sandwich refuses trajectories that leave the healthy orthant") {
    const auto inet = symmetric_pair(0.2, 0.5, {1.0, -1.0});
    auto sampler = SwitchingSampler::constant_lower();
    CHECK_THROWS_AS(sandwich_bounds(inet, Vector{0.0, 0.0}, 5, sampler), ModelError);
}

TEST_CASE("outside the last-hope set every realization fails") {
    const auto inet = symmetric_pair(0.2, 0.5, {1.0, -0.1});
    const auto hope = last_hope_set(inet);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    int outside = 0;
    for (int s = 0; s < 300; ++s) {
        Vector x{u(rng), u(rng)};
        if (last_hope_membership(inet, x)) continue;
        ++outside;
        auto sampler = SwitchingSampler::iid_uniform(static_cast<std::uint64_t>(s) + 1000);
        bool failed = false;
        for (int t = 0; t < 500 && !failed; ++t) {
            x = add(sampler.next(inet) * x, inet.r);
            failed = any_negative(x);
        }
        CHECK(failed);
    }
    CHECK(outside > 0);
}

TEST_CASE("no healthy lower equilibrium") {
    const auto inet = symmetric_pair(0.2, 0.5, {1.0, -2.0});
    CHECK_THROWS_AS(robust_invariant_set(inet), NoPositiveEquilibrium);
}

TEST_CASE("sampler names round trip") {
    for (auto k : {SamplerKind::ConstantLower, SamplerKind::ConstantUpper, SamplerKind::IidUniform,
                   SamplerKind::UserSequence})
        CHECK(sampler_kind_from_string(to_string(k)) == k);
}
