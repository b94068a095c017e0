#include "finnet/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "finnet/cycles.hpp"
#include "finnet/equilibria.hpp"
#include "finnet/intervene.hpp"
#include "finnet/invariance.hpp"
#include "finnet/numerics/tolerances.hpp"

namespace finnet::fixtures {

FinancialNetwork example1() {
    return {Matrix{{0.0, 0.5}, {0.5, 0.0}}, Matrix{{0.5, 0.25}, {0.25, 0.5}}, {4.0, 4.0},
            {1.0, 1.0}, {5.0, 5.0}};
}

FinancialNetwork example2() {
    Matrix C(4, 4);
    C(0, 3) = 0.8;
    C(1, 0) = 0.8;
    C(2, 1) = 0.8;
    C(3, 2) = 0.8;
    return {C, 0.5 * Matrix::identity(4), Vector(4, 5.0), Vector(4, 2.0), Vector(4, 7.5)};
}

FinancialNetwork example3() {
    constexpr std::size_t n = 10;
    Matrix C(n, n, 1.0 / 12.0);
    for (std::size_t i = 0; i < n; ++i) C(i, i) = 0.0;
    Vector diag(n, 0.025);
    diag[7] = 0.075;
    diag[9] = 1.0;
    Matrix D = Matrix::diagonal(diag);
    for (std::size_t j = 0; j < 9; ++j) D(9, j) += 2.0 / 9.0;
    return {C, D, Vector(n, 1.0), Vector(n, 0.4), Vector(n, 0.5)};
}

std::vector<Vector> example2_equilibria() {
    const double a = 0.1220, g = 1.0976, d = 0.5556;
    std::vector<Vector> base = {
        {5, 5, 5, 5}, {a, g, -a, -g}, {d, -d, d, -d}, {g, -a, -g, a}};
    std::vector<Vector> out;
    for (const auto& v : base) {
        out.push_back(v);
        out.push_back(scaled(-1.0, v));
    }
    return out;
}

std::vector<Vector> example2_orbit() {
    return {{0.6754, -1.3678, -0.6754, 1.3678}, {2.0942, -0.4597, -2.0942, 0.4597},
            {1.3678, 0.6754, -1.3678, -0.6754}, {0.4597, 2.0942, -0.4597, -2.0942},
            {-0.6754, 1.3678, 0.6754, -1.3678}, {-2.0942, 0.4597, 2.0942, -0.4597},
            {-1.3678, -0.6754, 1.3678, 0.6754}, {-0.4597, -2.0942, 0.4597, 2.0942}};
}

std::vector<Vector> example1_equilibria() {
    return {{6.0, 6.0}, {16.0 / 3.0, 14.0 / 3.0}, {14.0 / 3.0, 16.0 / 3.0}, {4.0, 4.0}};
}

Vector example3_sample_state() {
    return {-0.2943, -1.0177, -0.0024, 0.4985, -0.0982, 0.0954, -0.0425, 0.4426, -0.7542, -1.3096};
}

Vector example3_reference_injection() {
    return {0.2943, 1.0177, 0.0024, -0.4985, 0.0982, -0.0954, 0.0425, 5.5322, 0.7542, 5.1135};
}

std::vector<std::size_t> example3_sign_flip_components() { return {0, 1, 2, 3, 4, 5, 6, 8}; }

Vector example3_random_state(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.5, 1.0);
    Vector x(10);
    while (true) {
        for (double& v : x) v = u(rng);
        const bool neg = std::any_of(x.begin(), x.end(), [](double v) { return v < 0.0; });
        const bool pos = std::any_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
        if (neg && pos) return x;
    }
}

bool Report::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

std::string fmt(std::span<const double> v) {
    std::ostringstream s;
    s.precision(6);
    s << '(';
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
    s << ')';
    return s.str();
}

Check check_example2_equilibria() {
    Check c{"example2-equilibria", false, {}};
    const ShiftedModel model(example2());
    const auto found = consistent_equilibria(model);
    auto expected = example2_equilibria();
    std::size_t matched = 0;
    for (const auto& e : expected) {
        for (const auto& rec : found)
            if (max_abs_diff(rec.x_bar, e) <= tol::kFixture) {
                ++matched;
                break;
            }
    }
    c.passed = found.size() == 8 && matched == 8;
    c.detail = std::to_string(found.size()) + " consistent, " + std::to_string(matched) +
               "/8 matched within 1e-3";
    return c;
}

Check check_example2_orbit() {
    Check c{"example2-period8", false, {}};
    const ShiftedModel model(example2());
    const auto rows = example2_orbit();
    const auto traj = simulate(model, rows[0], 2000);
    double worst = 0.0;
    for (std::size_t t = 0; t <= 8; ++t) worst = std::max(worst, max_abs_diff(traj[t], rows[t % 8]));
    const auto cyc = detect_cycle(traj, tol::kState);
    c.passed = worst <= tol::kFixture && cyc && cyc->period == 8;
    c.detail = "max deviation " + std::to_string(worst) +
               ", detected period " + (cyc ? std::to_string(cyc->period) : std::string("none"));
    return c;
}

Check check_example1() {
    Check c{"example1-invariance", true, {}};
    const auto net = example1();
    const ShiftedModel model(net);
    std::ostringstream d;
    if (max_abs_diff(model.r(), Vector{0.5, 0.5}) > 1e-12 || !orthant0_invariant(net) ||
        !last_orthant_invariant(net)) {
        c.passed = false;
        d << "r = " << fmt(model.r()) << "; ";
    }
    const auto eqs = enumerate_equilibria(model);
    const auto expected = example1_equilibria();
    for (std::size_t k = 0; k < 4; ++k) {
        if (!eqs[k].consistent || max_abs_diff(eqs[k].v_bar, expected[k]) > tol::kFixture) {
            c.passed = false;
            d << "equilibrium k=" << k << " " << fmt(eqs[k].v_bar) << "; ";
        }
    }
    // Orthant 2 (bank 1 failed): 4 <= V1 <= 5, 5 <= V2 <= 6; orthant 1 mirrored.
    const double boxes[2][4] = {{5, 6, 4, 5}, {4, 5, 5, 6}};
    for (std::size_t k = 1; k <= 2; ++k) {
        const auto reg = stabilized_region(model, eqs[k]);
        const auto box = bounding_box(reg.region);
        const double* want = boxes[k - 1];
        for (std::size_t i = 0; i < 2; ++i) {
            const bool ok = box[i].first && box[i].second &&
                            std::abs(*box[i].first + 5.0 - want[2 * i]) <= 1e-6 &&
                            std::abs(*box[i].second + 5.0 - want[2 * i + 1]) <= 1e-6;
            if (!ok || !reg.stabilized) {
                c.passed = false;
                d << "box k=" << k << " coordinate " << i + 1 << " off; ";
            }
        }
        d << "orthant " << k << " stabilized at horizon " << reg.horizon << "; ";
    }
    c.detail = d.str();
    return c;
}

Check check_finite_determination() {
    Check c{"finite-determination", true, {}};
    std::ostringstream d;
    for (const auto& [name, net] : {std::pair{"example1", example1()}, {"example2", example2()}}) {
        const ShiftedModel model(net);
        for (auto k : {OrthantIndex::healthy(model.size()), OrthantIndex::failed(model.size())}) {
            const auto tau = finite_determination_index(model, k);
            const auto eq = candidate_equilibrium(model, k);
            const bool same = equivalent(region_of_attraction(model, eq, tau),
                                         region_of_attraction(model, eq, tau + 1));
            d << name << " k=" << k.value() << " tau=" << tau << (same ? "" : " (not nested)")
              << "; ";
            c.passed = c.passed && tau == 1 && same;
        }
    }
    c.detail = d.str();
    return c;
}

Check check_example3_injection(std::vector<std::string>& notes) {
    Check c{"example3-injection", true, {}};
    const ShiftedModel model(example3());
    const auto target = maximal_invariant_region(model, OrthantIndex::healthy(10));
    const Vector x = example3_sample_state();
    const auto inj = minimal_injection(target, x);
    std::ostringstream d;
    for (std::size_t i : example3_sign_flip_components()) {
        if (std::abs(inj.v[i] + x[i]) > tol::kFixture) {
            c.passed = false;
            d << "component " << i + 1 << " is not -x; ";
        }
    }
    for (std::size_t i : {std::size_t{7}, std::size_t{9}}) {
        if (!(x[i] + inj.v[i] > tol::kFixture)) {
            c.passed = false;
            d << "component " << i + 1 << " has no surplus; ";
        }
    }
    d << "v = " << fmt(inj.v);
    c.detail = d.str();
    const Vector ref = example3_reference_injection();
    if (max_abs_diff(inj.v, ref) > tol::kFixture) {
        notes.push_back("example3: printed injection magnitudes on banks 8 and 10 (" +
                        fmt(Vector{ref[7], ref[9]}) + ") are not reproduced; obtained " +
                        fmt(Vector{inj.v[7], inj.v[9]}) +
                        ". The generating asset-share matrix is not pinned down.");
    }
    return c;
}

Check check_example3_loop(std::uint64_t seed) {
    Check c{"example3-closed-loop", false, {}};
    const ShiftedModel model(example3());
    const Vector x0 = example3_random_state(seed);
    const auto plan = drive_to_invariant(model, x0);
    bool feasible = true;
    for (const auto& s : plan.steps) {
        ReallocationResult r;
        reallocation_residuals(model, s.D, tol::kStrictMargin, r);
        feasible = feasible && r.negativity <= tol::kOptimality &&
                   r.column_excess <= tol::kOptimality &&
                   r.threshold_shortfall <= tol::kOptimality;
    }
    c.passed = plan.success && feasible && plan.target.contains(plan.final_state(), tol::kState);
    c.detail = "iterations " + std::to_string(plan.iterations()) +
               (feasible ? "" : ", infeasible D recorded");
    return c;
}

Check check_no_period2(std::uint64_t seed) {
    Check c{"no-period-2", true, {}};
    std::ostringstream d;
    for (const auto& [name, net] : {std::pair{"example1", example1()}, {"example2", example2()}}) {
        const auto rep = verify_no_period2(ShiftedModel(net), 1000, seed);
        c.passed = c.passed && rep.period2_found == 0;
        d << name << ": " << rep.period2_found << " period-2, " << rep.equilibria
          << " equilibria, " << rep.cycles << " longer cycles; ";
    }
    c.detail = d.str();
    return c;
}

}  // namespace

Report run_all(std::uint64_t seed) {
    Report rep;
    auto guarded = [&](const char* name, auto&& fn) {
        try {
            rep.checks.push_back(fn());
        } catch (const std::exception& e) {
            rep.checks.push_back({name, false, std::string("exception: ") + e.what()});
        }
    };
    guarded("example2-equilibria", check_example2_equilibria);
    guarded("example2-period8", check_example2_orbit);
    guarded("example1-invariance", check_example1);
    guarded("finite-determination", check_finite_determination);
    guarded("example3-injection", [&] { return check_example3_injection(rep.notes); });
    guarded("example3-closed-loop", [&] { return check_example3_loop(seed); });
    guarded("no-period-2", [&] { return check_no_period2(seed); });
    return rep;
}

}  // namespace finnet::fixtures
