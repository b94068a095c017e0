#pragma once

namespace finnet::tol {

// Residual bound for linear solves: |Ax - b|_inf <= kSolve * (1 + |b|_inf).
inline constexpr double kSolve = 1e-9;
// LU pivots below this magnitude are treated as singular.
inline constexpr double kPivot = 1e-12;
// LP complementary slackness / convex feasibility.
inline constexpr double kOptimality = 1e-8;
// Margin that closes the strict asset-reallocation constraint.
inline constexpr double kStrictMargin = 1e-6;
// Equality of real states in synthetic runs.
inline constexpr double kState = 1e-9;
// Equality against 4-decimal published values.
inline constexpr double kFixture = 1e-3;
// Distance from zero below which an equilibrium entry is on a switching surface.
inline constexpr double kInterior = 1e-9;

}  // namespace finnet::tol
