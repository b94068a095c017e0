#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finnet/errors.hpp"
#include "finnet/numerics/dense_matrix.hpp"
#include "finnet/numerics/linalg.hpp"

namespace finnet {

/// The static model V(t+1) = C V(t) + D p - B phi(V(t) - V_lower).
struct FinancialNetwork {
    Matrix cross_holdings;  // C, n x n
    Matrix asset_shares;    // D, n x m
    Vector prices;          // p, length m
    Vector failure_costs;   // beta (diagonal of B), length n
    Vector thresholds;      // V_lower, length n

    std::size_t size() const noexcept { return cross_holdings.rows(); }
    std::size_t asset_count() const noexcept { return prices.size(); }

    /// D p
    Vector asset_income() const;
};

enum class ViolationCode {
    Shape,
    NonFinite,
    NegativeCrossHolding,
    NonzeroDiagonal,
    ColumnSumNotBelowOne,
    NegativeAssetShare,
    NegativePrice,
    NoPositivePrice,
    NonPositiveFailureCost,
    SingularCrossHoldings,
};

struct Violation {
    ViolationCode code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;  // fatal
    std::vector<Violation> warnings;    // reported only (singular C)

    bool ok() const noexcept { return violations.empty(); }
    bool has(ViolationCode code) const noexcept;
    std::string summary() const;
};

ValidationReport validate(const FinancialNetwork& net);

class ValidationFailed : public Error {
public:
    explicit ValidationFailed(ValidationReport report);
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// Throws ValidationFailed when validate() reports a violation.
void require_valid(const FinancialNetwork& net);

using Indicator = std::vector<std::uint8_t>;

/// phi(x)_i = 1 iff x_i < 0. Zero counts as healthy.
Indicator indicator(std::span<const double> x);

/// Orthant label k in [0, 2^n - 1]. The characteristic vector is the n-bit
/// binary expansion of k with the first organization in the most
/// significant bit, so for n = 2, k = 1 means (0, 1).
class OrthantIndex {
public:
    OrthantIndex(std::uint64_t k, std::size_t n);

    static OrthantIndex healthy(std::size_t n) { return {0, n}; }
    static OrthantIndex failed(std::size_t n);
    static OrthantIndex from_indicator(const Indicator& phi);

    std::uint64_t value() const noexcept { return k_; }
    std::size_t dimension() const noexcept { return n_; }
    std::uint64_t count() const noexcept { return std::uint64_t{1} << n_; }

    bool fails(std::size_t i) const noexcept { return ((k_ >> (n_ - 1 - i)) & 1U) != 0; }
    Indicator characteristic() const;
    /// Diagonal of J^[k] = diag(1 - 2 phi^[k]).
    Vector signs() const;

    bool is_healthy() const noexcept { return k_ == 0; }
    bool is_failed() const noexcept { return k_ == count() - 1; }

    friend bool operator==(const OrthantIndex&, const OrthantIndex&) = default;

private:
    std::uint64_t k_;
    std::size_t n_;
};

/// Largest n accepted by orthant bookkeeping.
inline constexpr std::size_t kMaxOrthantDimension = 62;

OrthantIndex orthant_of(std::span<const double> x);

/// Closed-orthant membership using the indicator's boundary convention.
bool in_orthant(std::span<const double> x, const OrthantIndex& k);

/// Shifted dynamics x(t+1) = C x(t) + r - B phi(x(t)) with
/// r = (C - I) V_lower + D p. Caches an LU factorization of I - C.
class ShiftedModel {
public:
    explicit ShiftedModel(FinancialNetwork net);

    const FinancialNetwork& network() const noexcept { return net_; }
    std::size_t size() const noexcept { return net_.size(); }
    const Vector& r() const noexcept { return r_; }
    const Matrix& C() const noexcept { return net_.cross_holdings; }
    const Vector& beta() const noexcept { return net_.failure_costs; }

    /// (I - C)^{-1} rhs
    Vector resolvent(std::span<const double> rhs) const;

    Vector step(std::span<const double> x) const;

    /// Same network with the asset-share matrix replaced.
    ShiftedModel with_asset_shares(Matrix d) const;

private:
    FinancialNetwork net_;
    Vector r_;
    std::optional<LuFactorization> resolvent_lu_;
};

/// Ordered states x(0..T).
struct Trajectory {
    std::vector<Vector> states;

    std::size_t size() const noexcept { return states.size(); }
    std::size_t horizon() const noexcept { return states.empty() ? 0 : states.size() - 1; }
    const Vector& operator[](std::size_t t) const { return states[t]; }
    const Vector& back() const { return states.back(); }

    /// Largest |step(x(t)) - x(t+1)|_inf over the trajectory.
    double replay_error(const ShiftedModel& model) const;
};

Trajectory simulate(const ShiftedModel& model, std::span<const double> x0, std::size_t T);

/// D p - beta >= 0 entrywise; then V(0) >= 0 keeps V(t) >= 0.
bool positivity_holds(const FinancialNetwork& net);

}  // namespace finnet
