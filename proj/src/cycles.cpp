#include "finnet/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "finnet/equilibria.hpp"
#include "finnet/numerics/linalg.hpp"

namespace finnet {

LiftedSystem build_lifted(const ShiftedModel& model, std::size_t h) {
    if (h < 2) throw std::invalid_argument("build_lifted: h must be >= 2");
    const std::size_t n = model.size();
    // Block-circulant shift: ones on the block subdiagonal and top-right.
    Matrix shift(h, h);
    for (std::size_t i = 1; i < h; ++i) shift(i, i - 1) = 1.0;
    shift(0, h - 1) = 1.0;

    LiftedSystem lift;
    lift.h = h;
    lift.n = n;
    lift.c_tilde = kron(shift, model.C());
    lift.b_tilde = kron(shift, Matrix::diagonal(model.beta()));
    lift.constant.reserve(n * h);
    for (std::size_t i = 0; i < h; ++i)
        lift.constant.insert(lift.constant.end(), model.r().begin(), model.r().end());
    return lift;
}

double LiftedSystem::residual(std::span<const double> z) const {
    if (z.size() != n * h) throw DimensionMismatch("LiftedSystem::residual: wrong length");
    const Indicator phi = indicator(z);
    Vector phi_d(phi.begin(), phi.end());
    Vector rhs = add(c_tilde * z, constant);
    rhs = sub(rhs, b_tilde * phi_d);
    return max_abs_diff(z, rhs);
}

Vector stack_states(const std::vector<Vector>& states) {
    Vector z;
    for (const auto& s : states) z.insert(z.end(), s.begin(), s.end());
    return z;
}

std::vector<Vector> enumerate_lifted_solutions(const LiftedSystem& lift) {
    const std::size_t N = lift.n * lift.h;
    if (N > 20) throw DimensionTooLarge("enumerate_lifted_solutions: n h exceeds 20");
    const LuFactorization lu(Matrix::identity(N) - lift.c_tilde);
    std::vector<Vector> out;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << N); ++k) {
        const OrthantIndex orth(k, N);
        const Indicator phi = orth.characteristic();
        Vector phi_d(phi.begin(), phi.end());
        Vector z = lu.solve(sub(lift.constant, lift.b_tilde * phi_d));
        if (in_orthant(z, orth)) out.push_back(std::move(z));
    }
    return out;
}

bool is_equilibrium_lift(const LiftedSystem& lift, std::span<const double> z, double tol) {
    for (std::size_t b = 1; b < lift.h; ++b)
        for (std::size_t i = 0; i < lift.n; ++i)
            if (std::abs(z[b * lift.n + i] - z[i]) > tol) return false;
    return true;
}

std::optional<CycleDetection> detect_cycle(const Trajectory& traj, double tol,
                                           std::size_t h_max) {
    if (h_max == 0) throw std::invalid_argument("detect_cycle: h_max must be positive");
    if (traj.size() < 2 * h_max + 1) {
        throw InsufficientLength("detect_cycle: need at least " + std::to_string(2 * h_max + 1) +
                                 " states, got " + std::to_string(traj.size()));
    }
    const std::size_t last = traj.size() - 1;
    std::vector<Indicator> signs(traj.size());
    for (std::size_t t = last - 2 * h_max; t <= last; ++t) signs[t] = indicator(traj[t]);

    for (std::size_t h = 1; h <= h_max; ++h) {
        // Window: t + h ranges over the final h_max states.
        const std::size_t first = last - h_max + 1 - h;
        bool match = true;
        for (std::size_t t = first; t + h <= last && match; ++t)
            match = signs[t] == signs[t + h];
        for (std::size_t t = first; t + h <= last && match; ++t)
            match = max_abs_diff(traj[t], traj[t + h]) <= tol;
        if (!match) continue;

        std::size_t start = first;
        while (start > 0 && max_abs_diff(traj[start - 1], traj[start - 1 + h]) <= tol) --start;
        return CycleDetection{h, start};
    }
    return std::nullopt;
}

NoPeriod2Report verify_no_period2(const ShiftedModel& model, std::size_t trials,
                                  std::uint64_t seed, std::size_t horizon, double tol) {
    const std::size_t n = model.size();
    horizon = std::max(horizon, 2 * kDefaultHmax);
    const double scale = 2.0 * (1.0 + norm_inf(model.resolvent(model.r())) +
                                norm_inf(model.resolvent(model.beta())));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-scale, scale);

    NoPeriod2Report rep;
    rep.trials = trials;
    Vector x0(n);
    for (std::size_t k = 0; k < trials; ++k) {
        for (double& v : x0) v = u(rng);
        const auto traj = simulate(model, x0, horizon);
        const auto found = detect_cycle(traj, tol);
        if (!found) {
            ++rep.undetermined;
        } else if (found->period == 1) {
            ++rep.equilibria;
        } else if (found->period == 2) {
            ++rep.period2_found;
            rep.witnesses.push_back(x0);
        } else {
            ++rep.cycles;
        }
    }
    return rep;
}

std::string_view to_string(LimitKind k) noexcept {
    switch (k) {
        case LimitKind::Equilibrium: return "equilibrium";
        case LimitKind::Cycle: return "cycle";
        case LimitKind::Critical: return "critical";
        case LimitKind::Undetermined: return "undetermined";
    }
    return "undetermined";
}

LimitClassification classify_limit(const ShiftedModel& model, std::span<const double> x0,
                                   const ClassifyOptions& opts) {
    if (!(opts.rho > 0.0)) throw std::invalid_argument("classify_limit: rho must be > 0");
    if (x0.size() != model.size()) throw DimensionMismatch("classify_limit: x0 has wrong length");
    LimitClassification out;
    out.rho = opts.rho;

    auto critical = [&](const Vector& x) {
        return std::any_of(x.begin(), x.end(), [&](double v) { return std::abs(v) < opts.rho; });
    };

    Trajectory traj;
    traj.states.emplace_back(x0.begin(), x0.end());
    const std::size_t min_len = 2 * opts.h_max + 1;
    const std::size_t check_every = std::max<std::size_t>(opts.h_max, 64);
    for (std::size_t t = 0;; ++t) {
        if (critical(traj.back())) {
            out.kind = LimitKind::Critical;
            out.critical_time = t;
            out.steps = t;
            return out;
        }
        const bool at_end = t == opts.horizon;
        if (traj.size() >= min_len && (at_end || (traj.size() - min_len) % check_every == 0)) {
            if (auto found = detect_cycle(traj, opts.tol, opts.h_max)) {
                out.period = found->period;
                out.transient = found->transient;
                out.kind = found->period == 1 ? LimitKind::Equilibrium : LimitKind::Cycle;
                const std::size_t last = traj.size() - 1;
                for (std::size_t s = last + 1 - found->period; s <= last; ++s)
                    out.orbit.push_back(traj[s]);
                out.steps = t;
                return out;
            }
        }
        if (at_end) break;
        traj.states.push_back(model.step(traj.back()));
    }
    out.steps = opts.horizon;
    return out;
}

}  // namespace finnet
