#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "finnet/numerics/dense_matrix.hpp"

namespace finnet {

/// Evaluates the objective at x and writes a (sub)gradient into grad.
using ObjectiveFn = std::function<double(std::span<const double> x, std::span<double> grad)>;

/// Maps a point onto the feasible set in place.
using ProjectorFn = std::function<void(std::span<double> x)>;

struct ConvexProgram {
    ObjectiveFn objective;
    ProjectorFn project;
    double tolerance = 1e-10;
    std::size_t max_iterations = 20000;
    double initial_step = 1.0;
};

struct ConvexResult {
    Vector point;
    double value = 0.0;
    std::size_t iterations = 0;
    /// False when max_iterations was reached before the movement criterion
    /// (the best iterate is still returned).
    bool converged = false;
    /// Objective value after every accepted iterate; non-increasing.
    std::vector<double> history;
};

/// Projected (sub)gradient descent with a diminishing step that is halved
/// whenever a trial point fails to decrease the objective.
ConvexResult convex_solve(const ConvexProgram& prog, std::span<const double> start);

// Projector building blocks.

/// x <- max(x, 0)
void project_nonnegative(std::span<double> x);

/// Projection onto {x : a.x >= b}.
void project_halfspace(std::span<double> x, std::span<const double> a, double b);

/// Projection onto {x : x >= 0, sum(x) <= cap}.
void project_capped_simplex(std::span<double> x, double cap);

/// Dykstra's alternating projections onto the intersection of closed convex
/// sets. Returns the number of sweeps used.
std::size_t dykstra_project(std::span<double> x, const std::vector<ProjectorFn>& sets,
                            double tolerance = 1e-13, std::size_t max_sweeps = 20000);

}  // namespace finnet
