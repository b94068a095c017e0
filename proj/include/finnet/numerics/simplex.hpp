#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "finnet/numerics/dense_matrix.hpp"

namespace finnet {

/// min c^T z  subject to  A z >= b, with optional per-variable lower bounds
/// (variables are free when no bound is given).
struct LinearProgram {
    Vector objective;
    Matrix constraints;
    Vector bounds;
    std::vector<std::optional<double>> lower_bounds;  // empty means all free

    std::size_t variable_count() const noexcept { return objective.size(); }
    std::size_t row_count() const noexcept { return bounds.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view to_string(LpStatus s) noexcept;

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Vector solution;
    double objective = 0.0;
    /// One multiplier per constraint row (>= 0 at optimality).
    Vector duals;
    /// Max violation over primal feasibility, dual feasibility, stationarity
    /// and complementary slackness. Only meaningful when status is Optimal.
    double certificate_residual = 0.0;
    std::size_t pivots = 0;

    bool optimal() const noexcept { return status == LpStatus::Optimal; }
};

/// Two-phase dense tableau simplex with Bland's rule. Returns a vertex
/// solution together with a complementary-slackness certificate.
/// Throws DimensionMismatch for inconsistent shapes and std::invalid_argument
/// for non-finite coefficients.
LpResult lp_solve(const LinearProgram& lp);

/// Recompute the optimality certificate of a claimed primal/dual pair.
double lp_certificate_residual(const LinearProgram& lp, std::span<const double> z,
                               std::span<const double> y);

}  // namespace finnet
