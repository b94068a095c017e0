#pragma once

#include <cstddef>
#include <vector>

#include "finnet/network.hpp"
#include "finnet/numerics/tolerances.hpp"
#include "finnet/polyhedron.hpp"

namespace finnet {

struct InjectionResult {
    Vector v;
    double objective = 0.0;      // 1^T v
    double certificate_residual = 0.0;
    double margin = 0.0;         // min row slack of x + v in the target
};

/// min 1^T v  s.t.  A (x + v) >= b  for target {A y >= b}. v is free unless
/// nonnegative is set. Throws InfeasibleProblem for an empty target and
/// ModelError if the LP is unbounded.
InjectionResult minimal_injection(const Polyhedron& target, std::span<const double> x,
                                  bool nonnegative = false);

struct ReallocationOptions {
    double epsilon = tol::kStrictMargin;
    double tolerance = 1e-10;
    std::size_t max_iterations = 4000;
    double initial_step = 0.5;
    /// Weight of mu |D p - v|^2 added to the objective. The objective is
    /// flat along directions that trade D p against total holdings; this
    /// picks the minimizer whose D p is closest to v.
    double tie_break = 1e-3;
};

struct ReallocationResult {
    Matrix D;
    double objective = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    double column_excess = 0.0;     // max(1^T D - 1, 0)
    double negativity = 0.0;        // max(-D, 0)
    double threshold_shortfall = 0.0;  // max(V_lower + eps - (I - C)^{-1} D p, 0)
};

/// ||D p - v||_2 + ||1^T D||_2
double reallocation_objective(const Matrix& D, std::span<const double> p,
                              std::span<const double> v);

/// Feasibility residuals of D against the three constraint families.
void reallocation_residuals(const ShiftedModel& model, const Matrix& D, double epsilon,
                            ReallocationResult& out);

/// Projects D onto {D >= 0, 1^T D <= 1^T, (I - C)^{-1} D p >= V_lower + eps}.
void project_reallocation(const ShiftedModel& model, Matrix& D, double epsilon);

/// min_D ||D p - v||_2 + ||1^T D||_2 over the set above, started from the
/// model's current D. Throws InfeasibleProblem (naming the violated
/// constraint) when no feasible point is reached.
ReallocationResult asset_reallocation(const ShiftedModel& model, std::span<const double> v,
                                      const ReallocationOptions& opts = {});

struct InterventionStep {
    Matrix D;
    Vector x;    // state after stepping under D
    Vector v;    // v after the update
    double objective = 0.0;
    bool feasible = false;  // D passed the post-check
};

struct InterventionOptions {
    bool nonnegative_injection = false;
    bool clamped_update = false;  // v <- max(v - x, 0) instead of v <- v - x
    std::size_t max_iterations = 1000;
    ReallocationOptions reallocation;
};

struct InterventionPlan {
    Vector x0;
    Vector initial_v;
    Polyhedron target;  // M+ of the original network
    std::vector<InterventionStep> steps;
    bool success = false;
    bool iteration_cap_reached = false;

    std::size_t iterations() const noexcept { return steps.size(); }
    const Vector& final_state() const { return steps.empty() ? x0 : steps.back().x; }
};

/// The closed loop: compute M+, solve the injection LP, then repeat
/// {reallocate D, step under the new D, update v} until x is in M+.
/// On hitting the iteration cap the partial plan is returned with
/// iteration_cap_reached set.
InterventionPlan drive_to_invariant(const ShiftedModel& model, std::span<const double> x0,
                                    const InterventionOptions& opts = {});

}  // namespace finnet
