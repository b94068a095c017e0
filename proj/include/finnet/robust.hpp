#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finnet/network.hpp"
#include "finnet/polyhedron.hpp"

namespace finnet {

/// Healthy-region linear inclusion x(t+1) = C(t) x(t) + r with
/// C_lower <= C(t) <= C_upper entrywise and a zero diagonal.
struct IntervalNetwork {
    Matrix c_lower;
    Matrix c_upper;
    Vector r;

    std::size_t size() const noexcept { return r.size(); }

    /// Interval [(1 - rel) C, (1 + rel) C] around a nominal matrix.
    static IntervalNetwork around(const Matrix& c, Vector r, double rel);
};

/// Lists every problem; empty means valid.
std::vector<std::string> validate(const IntervalNetwork& inet);
void require_valid(const IntervalNetwork& inet);

/// Linear model x+ = C x + r packaged as a ShiftedModel (V_lower = 0,
/// D = I, p = r, unit failure costs); inside the healthy orthant the
/// dynamics coincide.
ShiftedModel linear_model(const Matrix& c, const Vector& r);

/// ((I - C_lower)^{-1} r, (I - C_upper)^{-1} r)
std::pair<Vector, Vector> extremal_fixed_points(const IntervalNetwork& inet);

/// Largest robust invariant set: maximal invariant set of the lower system.
/// Throws NoPositiveEquilibrium when (I - C_lower)^{-1} r has a negative entry.
Polyhedron robust_invariant_set(const IntervalNetwork& inet);

/// Last-hope set: maximal invariant set of the upper system.
Polyhedron last_hope_set(const IntervalNetwork& inet);

bool last_hope_membership(const IntervalNetwork& inet, std::span<const double> x0,
                          double tol = 0.0);

enum class SamplerKind { ConstantLower, ConstantUpper, IidUniform, UserSequence };

std::string_view to_string(SamplerKind k) noexcept;
SamplerKind sampler_kind_from_string(std::string_view s);

/// Produces C(0), C(1), ... inside the interval. A user sequence is
/// repeated cyclically.
class SwitchingSampler {
public:
    static SwitchingSampler constant_lower();
    static SwitchingSampler constant_upper();
    static SwitchingSampler iid_uniform(std::uint64_t seed);
    static SwitchingSampler user_sequence(std::vector<Matrix> sequence);

    SamplerKind kind() const noexcept { return kind_; }
    Matrix next(const IntervalNetwork& inet);

private:
    explicit SwitchingSampler(SamplerKind k) : kind_(k) {}

    SamplerKind kind_;
    std::mt19937_64 rng_;
    std::vector<Matrix> sequence_;
    std::size_t cursor_ = 0;
};

struct SandwichResult {
    std::vector<Vector> lower;   // x-(t), C_lower throughout
    std::vector<Vector> actual;  // x(t) under the sampled C(t)
    std::vector<Vector> upper;   // x+(t), C_upper throughout
    bool ordered = true;         // x- <= x <= x+ at every step (within tol)
    std::size_t first_violation = 0;
    Vector x_minus_bar;
    Vector x_plus_bar;
};

/// Runs the three systems side by side for T steps. Throws ModelError when
/// the sampled trajectory leaves the healthy orthant, where the inclusion
/// no longer describes the network.
SandwichResult sandwich_bounds(const IntervalNetwork& inet, std::span<const double> x0,
                               std::size_t T, SwitchingSampler& sampler, double tol = 1e-12);

struct RobustReport {
    Vector x_minus_bar;
    Vector x_plus_bar;
    Polyhedron robust_set;   // R, equal to P-
    Polyhedron last_hope;    // P+
};

RobustReport robust_report(const IntervalNetwork& inet);

}  // namespace finnet
