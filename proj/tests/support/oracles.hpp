#pragma once

#include <optional>
#include <random>

#include "finnet/network.hpp"
#include "finnet/numerics/simplex.hpp"

namespace finnet::oracle {

/// Brute force over all basic solutions (n of the constraint rows active).
/// Assumes free variables and a bounded optimum; nullopt when no vertex is
/// feasible.
std::optional<double> vertex_enumeration(const LinearProgram& lp);

/// Minimum of the reallocation objective over a 0.01 grid for n = m = 2.
struct GridResult {
    double value = 0.0;
    Matrix D;
    bool found = false;
};
GridResult reallocation_grid(const ShiftedModel& model, std::span<const double> v,
                             double epsilon, double step = 0.01);

/// Random LP with 2-3 free variables and at most 6 rows, bounded below by
/// construction (box rows are included).
LinearProgram random_lp(std::mt19937_64& rng);

}  // namespace finnet::oracle
