#pragma once

#include <cstddef>
#include <vector>

#include "finnet/network.hpp"

namespace finnet {

struct EquilibriumRecord {
    OrthantIndex orthant;
    Vector x_bar;  // shifted coordinates
    Vector v_bar;  // x_bar + V_lower
    bool consistent = false;
    /// No entry within tol::kInterior of zero. Boundary equilibria sit on a
    /// switching surface and are fragile.
    bool interior = false;
};

/// x = (I - C)^{-1} (r - B phi^[k]) with its consistency flag.
EquilibriumRecord candidate_equilibrium(const ShiftedModel& model, const OrthantIndex& k);

inline constexpr std::size_t kMaxEnumerationDimension = 24;

/// All 2^n candidates, ordered by k. Throws DimensionTooLarge for n > 24.
std::vector<EquilibriumRecord> enumerate_equilibria(const ShiftedModel& model);

/// Only the consistent records of enumerate_equilibria.
std::vector<EquilibriumRecord> consistent_equilibria(const ShiftedModel& model);

/// Sign conditions on w1 = (I - C)^{-1} r and w2 = (I - C)^{-1}(r - beta).
struct ExistenceReport {
    bool positive_exists = false;   // w1 >= 0
    bool positive_unique = false;   // w2 >= 0: the only equilibrium, and it is >= 0
    bool negative_exists = false;   // w2 < 0
    bool negative_unique = false;   // w1 < 0: the only equilibrium, and it is < 0
    Vector w_healthy;               // w1
    Vector w_failed;                // w2
};

ExistenceReport existence_conditions(const ShiftedModel& model);

}  // namespace finnet
