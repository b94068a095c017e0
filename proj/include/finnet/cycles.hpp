#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "finnet/network.hpp"

namespace finnet {

/// Period-h lift Z = C~ Z + 1 (x) r - B~ phi(Z), where Z stacks h
/// consecutive states. C~ and B~ carry C (resp. B) on the block
/// subdiagonal and in the top-right block.
struct LiftedSystem {
    std::size_t h = 0;
    std::size_t n = 0;
    Matrix c_tilde;
    Matrix b_tilde;
    Vector constant;  // 1_h (x) r

    /// |Z - (C~ Z + constant - B~ phi(Z))|_inf
    double residual(std::span<const double> z) const;
};

LiftedSystem build_lifted(const ShiftedModel& model, std::size_t h);

/// Stack of h state vectors, in order.
Vector stack_states(const std::vector<Vector>& states);

/// Every solution of the lifted equation, found by solving the affine
/// equation for each of the 2^(n h) sign patterns and keeping the
/// consistent ones. Guarded to n h <= 20.
std::vector<Vector> enumerate_lifted_solutions(const LiftedSystem& lift);

/// True when z is 1_h (x) x for some x (within tol).
bool is_equilibrium_lift(const LiftedSystem& lift, std::span<const double> z, double tol);

inline constexpr std::size_t kDefaultHmax = 64;

struct CycleDetection {
    std::size_t period = 0;     // 1 means equilibrium
    std::size_t transient = 0;  // first t from which x(t + h) = x(t) holds
};

/// Smallest h <= h_max with |x(t + h) - x(t)|_inf <= tol over the final
/// window of h_max steps. The orthant sequence is compared first as a
/// cheap filter. Throws InsufficientLength for fewer than 2 h_max + 1 states.
std::optional<CycleDetection> detect_cycle(const Trajectory& traj, double tol,
                                           std::size_t h_max = kDefaultHmax);

struct NoPeriod2Report {
    std::size_t trials = 0;
    std::size_t period2_found = 0;
    std::size_t equilibria = 0;
    std::size_t cycles = 0;        // period > 2
    std::size_t undetermined = 0;
    std::vector<Vector> witnesses;  // initial states of any period-2 finding
};

NoPeriod2Report verify_no_period2(const ShiftedModel& model, std::size_t trials,
                                  std::uint64_t seed, std::size_t horizon = 600,
                                  double tol = 1e-9);

enum class LimitKind { Equilibrium, Cycle, Critical, Undetermined };

std::string_view to_string(LimitKind k) noexcept;

struct LimitClassification {
    LimitKind kind = LimitKind::Undetermined;
    std::size_t period = 0;
    std::vector<Vector> orbit;  // one state for Equilibrium, h states for Cycle
    std::size_t transient = 0;
    std::size_t critical_time = 0;
    std::size_t steps = 0;      // states simulated beyond x(0)
    double rho = 0.0;
};

struct ClassifyOptions {
    double rho = 1e-6;
    std::size_t horizon = 10000;
    std::size_t h_max = kDefaultHmax;
    double tol = 1e-9;
};

/// Critical as soon as some |x_i(t)| < rho; otherwise Equilibrium or Cycle
/// from detect_cycle, or Undetermined when the horizon runs out.
LimitClassification classify_limit(const ShiftedModel& model, std::span<const double> x0,
                                   const ClassifyOptions& opts = {});

}  // namespace finnet
