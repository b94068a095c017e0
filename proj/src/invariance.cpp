#include "finnet/invariance.hpp"

#include <cmath>
#include <random>
#include <string>
#include <stdexcept>

#include "finnet/numerics/linalg.hpp"

namespace finnet {

bool orthant0_invariant(const FinancialNetwork& net) {
    const ShiftedModel model(net);
    for (double v : model.r())
        if (v < 0.0) return false;
    return true;
}

bool last_orthant_invariant(const FinancialNetwork& net) {
    const ShiftedModel model(net);
    for (std::size_t i = 0; i < model.size(); ++i)
        if (!(model.r()[i] < model.beta()[i])) return false;
    return true;
}

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Invariant: return "invariant";
        case Verdict::NotInvariant: return "not_invariant";
        case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

IntermediateVerdict intermediate_not_invariant(const ShiftedModel& model, const OrthantIndex& k,
                                               std::uint64_t seed, std::size_t samples) {
    const std::size_t n = model.size();
    if (k.dimension() != n || k.is_healthy() || k.is_failed()) {
        throw std::invalid_argument("intermediate_not_invariant: k must be intermediate");
    }
    IntermediateVerdict out;
    const Matrix& C = model.C();
    bool all_positive = true;
    for (std::size_t i = 0; i < n && all_positive; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !(C(i, j) > 0.0)) {
                all_positive = false;
                break;
            }
    out.verdict = all_positive ? Verdict::NotInvariant : Verdict::Unknown;

    // Sample magnitudes on a log scale so both near-boundary and far states
    // are tried.
    const double scale = 1.0 + norm_inf(model.r()) + norm_inf(model.beta());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> expo(-6.0, std::log10(10.0 * scale));
    const Vector signs = k.signs();
    Vector x(n);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = std::pow(10.0, expo(rng));
            x[i] = signs[i] > 0 ? mag : -mag;
        }
        if (!in_orthant(model.step(x), k)) {
            out.escape_witness = x;
            break;
        }
    }
    return out;
}

InvarianceReport invariance_report(const ShiftedModel& model, std::uint64_t seed,
                                   std::size_t max_intermediate_dimension) {
    InvarianceReport rep;
    rep.orthant0_invariant = orthant0_invariant(model.network());
    rep.last_orthant_invariant = last_orthant_invariant(model.network());
    rep.r = model.r();
    rep.beta = model.beta();
    const std::size_t n = model.size();
    if (n >= 2 && n <= max_intermediate_dimension) {
        const std::uint64_t last = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t k = 1; k < last; ++k)
            rep.intermediate[k] = intermediate_not_invariant(model, OrthantIndex(k, n), seed + k);
    }
    return rep;
}

namespace {

void append_block(Polyhedron& p, const Matrix& Ct, const Vector& signs, const Vector& x_bar,
                  std::size_t t) {
    const std::size_t n = Ct.rows();
    Matrix rows(n, n);
    Vector b = Ct * x_bar;
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = signs[i] * (b[i] - x_bar[i]);
        for (std::size_t j = 0; j < n; ++j) rows(i, j) = signs[i] * Ct(i, j);
    }
    p.append(rows, b, t);
}

}  // namespace

Polyhedron region_of_attraction(const ShiftedModel& model, const EquilibriumRecord& eq,
                                std::size_t tau) {
    const std::size_t n = model.size();
    if (eq.x_bar.size() != n) throw DimensionMismatch("region_of_attraction: equilibrium size");
    Polyhedron p(n);
    p.label = "region_of_attraction";
    const Vector signs = eq.orthant.signs();
    Matrix Ct = Matrix::identity(n);
    for (std::size_t t = 0; t <= tau; ++t) {
        append_block(p, Ct, signs, eq.x_bar, t);
        if (t < tau) Ct = Ct * model.C();
    }
    return p;
}

std::size_t finite_determination_index(const ShiftedModel& model, const OrthantIndex& k,
                                       std::size_t cap) {
    if (!k.is_healthy() && !k.is_failed()) {
        throw std::invalid_argument("finite_determination_index: k must be 0 or 2^n - 1");
    }
    const auto eq = candidate_equilibrium(model, k);
    if (!eq.consistent) {
        throw NoPositiveEquilibrium("finite_determination_index: equilibrium of orthant " +
                                    std::to_string(k.value()) + " is not consistent");
    }
    const double sign = k.is_healthy() ? 1.0 : -1.0;
    Vector ct_x = eq.x_bar;  // C^t x_bar
    for (std::size_t t = 1; t <= cap; ++t) {
        ct_x = model.C() * ct_x;
        bool ok = true;
        for (std::size_t i = 0; i < ct_x.size(); ++i)
            if (sign * (eq.x_bar[i] - ct_x[i]) < 0.0) {
                ok = false;
                break;
            }
        if (ok) return t;
    }
    throw NotDeterminedWithinCap("finite_determination_index: no tau <= " + std::to_string(cap));
}

Polyhedron maximal_invariant_region(const ShiftedModel& model, const OrthantIndex& k) {
    const std::size_t tau = finite_determination_index(model, k);
    auto p = region_of_attraction(model, candidate_equilibrium(model, k), tau);
    p.label = "maximal_invariant_region";
    p.certified = true;
    return p;
}

StabilizedRegion stabilized_region(const ShiftedModel& model, const EquilibriumRecord& eq,
                                   std::size_t max_horizon) {
    const std::size_t n = model.size();
    StabilizedRegion out;
    out.region = Polyhedron(n);
    out.region.label = "stabilized_region";
    const Vector signs = eq.orthant.signs();
    Matrix Ct = Matrix::identity(n);
    append_block(out.region, Ct, signs, eq.x_bar, 0);
    for (std::size_t t = 1; t <= max_horizon; ++t) {
        Ct = Ct * model.C();
        Polyhedron next(n);
        append_block(next, Ct, signs, eq.x_bar, t);
        if (subset_of(out.region, next)) {
            out.horizon = t - 1;
            out.stabilized = true;
            out.region.certified = true;
            return out;
        }
        out.region.append(next.A(), next.b(), t);
    }
    out.horizon = max_horizon;
    return out;
}

}  // namespace finnet
