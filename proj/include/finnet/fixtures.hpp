#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finnet/network.hpp"

namespace finnet::fixtures {

/// Two banks: C = [[0, .5], [.5, 0]], D = [[.5, .25], [.25, .5]], p = 4,
/// beta = 1, V_lower = 5.
FinancialNetwork example1();

/// Four banks on a ring (C has 0.8 on (1,4), (2,1), (3,2), (4,3)),
/// V_lower = 7.5, D = 0.5 I, p = 5, beta = 2. Has a stable period-8 orbit.
FinancialNetwork example2();

/// Ten banks, C = (11^T - I) / 12, V_lower = 0.5, p = 1, beta = 0.4. The
/// asset-share matrix is not pinned by the published example; ours makes
/// banks 1-7 and 9 weak, bank 8 mildly weak and bank 10 strong.
FinancialNetwork example3();

/// Reference equilibria (shifted coordinates) of example2, 4 decimals.
std::vector<Vector> example2_equilibria();

/// The eight states of the period-8 orbit of example2, 4 decimals.
std::vector<Vector> example2_orbit();

/// Equilibria of example1 in V coordinates, ordered by orthant index.
std::vector<Vector> example1_equilibria();

/// Published sample state for the injection LP and its printed injection.
Vector example3_sample_state();
Vector example3_reference_injection();

/// Components (0-based) where the printed injection equals -x.
std::vector<std::size_t> example3_sign_flip_components();

/// Mixed-sign state uniform in [-1.5, 1.0]^10 from a fixed seed.
Vector example3_random_state(std::uint64_t seed);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Report {
    std::vector<Check> checks;
    std::vector<std::string> notes;
    bool all_passed() const;
};

/// Runs the three worked examples end to end.
Report run_all(std::uint64_t seed = 1);

}  // namespace finnet::fixtures
