#include "finnet/equilibria.hpp"

#include <algorithm>
#include <cmath>

#include "finnet/numerics/tolerances.hpp"

namespace finnet {

EquilibriumRecord candidate_equilibrium(const ShiftedModel& model, const OrthantIndex& k) {
    const std::size_t n = model.size();
    if (k.dimension() != n) throw DimensionMismatch("candidate_equilibrium: orthant dimension");
    Vector rhs = model.r();
    for (std::size_t i = 0; i < n; ++i)
        if (k.fails(i)) rhs[i] -= model.beta()[i];

    EquilibriumRecord rec{k, model.resolvent(rhs), {}, false, false};
    rec.v_bar = add(rec.x_bar, model.network().thresholds);
    rec.consistent = in_orthant(rec.x_bar, k);
    rec.interior = std::all_of(rec.x_bar.begin(), rec.x_bar.end(),
                               [](double v) { return std::abs(v) > tol::kInterior; });
    return rec;
}

std::vector<EquilibriumRecord> enumerate_equilibria(const ShiftedModel& model) {
    const std::size_t n = model.size();
    if (n > kMaxEnumerationDimension) {
        throw DimensionTooLarge("enumerate_equilibria: n exceeds 24");
    }
    std::vector<EquilibriumRecord> out;
    const std::uint64_t count = std::uint64_t{1} << n;
    out.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k)
        out.push_back(candidate_equilibrium(model, OrthantIndex(k, n)));
    return out;
}

std::vector<EquilibriumRecord> consistent_equilibria(const ShiftedModel& model) {
    auto all = enumerate_equilibria(model);
    std::erase_if(all, [](const EquilibriumRecord& r) { return !r.consistent; });
    return all;
}

ExistenceReport existence_conditions(const ShiftedModel& model) {
    ExistenceReport rep;
    rep.w_healthy = model.resolvent(model.r());
    rep.w_failed = model.resolvent(sub(model.r(), model.beta()));
    auto all_of = [](const Vector& v, auto pred) { return std::all_of(v.begin(), v.end(), pred); };
    rep.positive_exists = all_of(rep.w_healthy, [](double v) { return v >= 0.0; });
    rep.positive_unique = all_of(rep.w_failed, [](double v) { return v >= 0.0; });
    rep.negative_exists = all_of(rep.w_failed, [](double v) { return v < 0.0; });
    rep.negative_unique = all_of(rep.w_healthy, [](double v) { return v < 0.0; });
    return rep;
}

}  // namespace finnet
