#include "finnet/random_networks.hpp"

#include <algorithm>
#include <stdexcept>

#include "finnet/equilibria.hpp"

namespace finnet {

namespace {

FinancialNetwork draw(std::mt19937_64& rng, const RandomNetworkOptions& opts) {
    const std::size_t n = opts.n, m = opts.m;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix C(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j || u(rng) >= opts.edge_probability) continue;
            C(i, j) = 0.05 + u(rng);
            s += C(i, j);
        }
        if (s == 0.0) continue;
        const double target = 0.1 + (opts.max_column_sum - 0.1) * u(rng);
        for (std::size_t i = 0; i < n; ++i) C(i, j) *= target / s;
    }
    Matrix D(n, m);
    for (double& d : D.data()) d = u(rng) < 0.7 ? u(rng) / static_cast<double>(n) : 0.0;
    Vector p(m);
    for (double& v : p) v = 0.5 + 2.0 * u(rng);
    const Vector income = D * p;
    Vector beta(n), lower(n);
    for (std::size_t i = 0; i < n; ++i) {
        beta[i] = 0.1 + u(rng);
        lower[i] = (0.2 + 1.5 * u(rng)) * (income[i] + 0.1);
    }
    return {std::move(C), std::move(D), std::move(p), std::move(beta), std::move(lower)};
}

}  // namespace

FinancialNetwork random_network(std::mt19937_64& rng, const RandomNetworkOptions& opts) {
    if (opts.n == 0 || opts.m == 0) throw std::invalid_argument("random_network: empty size");
    if (!(opts.max_column_sum > 0.1 && opts.max_column_sum < 1.0)) {
        throw std::invalid_argument("random_network: max_column_sum must be in (0.1, 1)");
    }
    for (int attempt = 0; attempt < 10000; ++attempt) {
        auto net = draw(rng, opts);
        if (!validate(net).ok()) continue;
        if (!validate(net).warnings.empty()) continue;
        if (opts.require_healthy_equilibrium) {
            const ShiftedModel model(net);
            const auto eq = candidate_equilibrium(model, OrthantIndex::healthy(opts.n));
            if (!eq.consistent || !eq.interior) continue;
        }
        return net;
    }
    throw ModelError("random_network: no valid draw after 10000 attempts");
}

}  // namespace finnet
