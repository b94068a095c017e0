#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>

#include "finnet/equilibria.hpp"
#include "finnet/network.hpp"
#include "finnet/polyhedron.hpp"

namespace finnet {

/// r >= 0 entrywise: the healthy orthant is invariant.
bool orthant0_invariant(const FinancialNetwork& net);

/// r < beta entrywise: the all-failed orthant is invariant.
bool last_orthant_invariant(const FinancialNetwork& net);

enum class Verdict { Invariant, NotInvariant, Unknown };

std::string_view to_string(Verdict v) noexcept;

struct IntermediateVerdict {
    Verdict verdict = Verdict::Unknown;
    /// A state in the orthant whose image leaves it, when one was found.
    std::optional<Vector> escape_witness;
};

/// For 0 < k < 2^n - 1. NotInvariant when every off-diagonal C_ij is
/// positive; otherwise Unknown together with the result of a sampled
/// one-step escape search.
IntermediateVerdict intermediate_not_invariant(const ShiftedModel& model, const OrthantIndex& k,
                                               std::uint64_t seed = 0,
                                               std::size_t samples = 2000);

struct InvarianceReport {
    bool orthant0_invariant = false;
    bool last_orthant_invariant = false;
    Vector r;     // (C - I) V_lower + D p
    Vector beta;
    std::map<std::uint64_t, IntermediateVerdict> intermediate;
};

/// Intermediate verdicts are filled for n <= max_intermediate_dimension.
InvarianceReport invariance_report(const ShiftedModel& model, std::uint64_t seed = 0,
                                   std::size_t max_intermediate_dimension = 10);

/// Rows J C^t x >= J (C^t - I) x_bar for t = 0..tau, in shifted coordinates.
Polyhedron region_of_attraction(const ShiftedModel& model, const EquilibriumRecord& eq,
                                std::size_t tau);

inline constexpr std::size_t kMaxDeterminationIndex = 10000;

/// Smallest tau >= 1 with (I - C^tau) x_bar >= 0 (k = 0) or <= 0 (k = 2^n - 1).
/// Throws NotDeterminedWithinCap past the cap, std::invalid_argument for
/// other k, NoPositiveEquilibrium when the equilibrium is inconsistent.
std::size_t finite_determination_index(const ShiftedModel& model, const OrthantIndex& k,
                                       std::size_t cap = kMaxDeterminationIndex);

/// Region of attraction truncated at the finite determination index. For
/// k = 0 this is the maximal healthy invariant region M+.
Polyhedron maximal_invariant_region(const ShiftedModel& model, const OrthantIndex& k);

struct StabilizedRegion {
    Polyhedron region;
    std::size_t horizon = 0;
    bool stabilized = false;  // rows beyond horizon are implied (checked by LP)
};

/// For any orthant with a consistent equilibrium: adds rows t = 1, 2, ...
/// until the next block is implied by the current set, which makes the set
/// invariant. Gives up (stabilized = false) at max_horizon.
StabilizedRegion stabilized_region(const ShiftedModel& model, const EquilibriumRecord& eq,
                                   std::size_t max_horizon = 200);

}  // namespace finnet
