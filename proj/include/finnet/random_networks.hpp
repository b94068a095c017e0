#pragma once

#include <cstddef>
#include <random>

#include "finnet/network.hpp"

namespace finnet {

struct RandomNetworkOptions {
    std::size_t n = 3;
    std::size_t m = 3;
    double max_column_sum = 0.9;   // column sums of C drawn in [0.1, max]
    double edge_probability = 1.0; // chance an off-diagonal entry is nonzero
    /// Redraw until the healthy-orthant equilibrium is consistent.
    bool require_healthy_equilibrium = false;
};

/// Draws a network that passes validate(). Prices, failure costs and
/// thresholds are scaled so both healthy and failed behaviour is reachable.
FinancialNetwork random_network(std::mt19937_64& rng, const RandomNetworkOptions& opts);

}  // namespace finnet
