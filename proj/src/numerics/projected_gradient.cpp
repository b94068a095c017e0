#include "finnet/numerics/projected_gradient.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "finnet/errors.hpp"
#include "finnet/numerics/kernels.hpp"

namespace finnet {

ConvexResult convex_solve(const ConvexProgram& prog, std::span<const double> start) {
    if (!prog.objective || !prog.project) {
        throw std::invalid_argument("convex_solve: objective and projector are required");
    }
    const std::size_t n = start.size();
    ConvexResult out;
    Vector x(start.begin(), start.end());
    prog.project(x);
    Vector g(n), trial(n), gtrial(n);
    double f = prog.objective(x, g);
    out.history.push_back(f);
    double step = prog.initial_step;

    for (std::size_t k = 0; k < prog.max_iterations; ++k) {
        out.iterations = k + 1;
        const double gnorm = norm2(g);
        if (gnorm == 0.0) {
            out.converged = true;
            break;
        }
        step = std::min(step, prog.initial_step / std::sqrt(static_cast<double>(k + 1)));

        bool accepted = false;
        double ftrial = f;
        while (step * gnorm >= prog.tolerance) {
            trial = x;
            kernels::axpy(-step, g, trial);
            prog.project(trial);
            ftrial = prog.objective(trial, gtrial);
            if (ftrial <= f) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            out.converged = true;
            break;
        }
        const double movement = norm2(sub(trial, x));
        std::swap(x, trial);
        std::swap(g, gtrial);
        f = ftrial;
        out.history.push_back(f);
        if (movement < prog.tolerance) {
            out.converged = true;
            break;
        }
    }
    out.point = std::move(x);
    out.value = f;
    return out;
}

void project_nonnegative(std::span<double> x) {
    for (double& v : x) v = std::max(v, 0.0);
}

void project_halfspace(std::span<double> x, std::span<const double> a, double b) {
    if (a.size() != x.size()) throw DimensionMismatch("project_halfspace: sizes differ");
    const double aa = kernels::dot(a, a);
    if (aa == 0.0) return;
    const double gap = b - kernels::dot(a, x);
    if (gap > 0.0) kernels::axpy(gap / aa, a, x);
}

void project_capped_simplex(std::span<double> x, double cap) {
    double s = 0.0;
    for (double v : x) s += std::max(v, 0.0);
    if (s <= cap) {
        project_nonnegative(x);
        return;
    }
    // Onto {x >= 0, sum x = cap}: find theta with sum max(x - theta, 0) = cap.
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        cumulative += sorted[i];
        const double t = (cumulative - cap) / static_cast<double>(i + 1);
        if (i + 1 == sorted.size() || sorted[i + 1] <= t) {
            theta = t;
            break;
        }
    }
    for (double& v : x) v = std::max(v - theta, 0.0);
}

std::size_t dykstra_project(std::span<double> x, const std::vector<ProjectorFn>& sets,
                            double tolerance, std::size_t max_sweeps) {
    const std::size_t n = x.size();
    std::vector<Vector> increments(sets.size(), Vector(n, 0.0));
    Vector before(n), y(n);
    for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
        std::copy(x.begin(), x.end(), before.begin());
        // x can sit still for a sweep while the increments are still moving,
        // so both must settle.
        double shift = 0.0;
        for (std::size_t k = 0; k < sets.size(); ++k) {
            for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + increments[k][i];
            sets[k](y);
            for (std::size_t i = 0; i < n; ++i) {
                const double inc = x[i] + increments[k][i] - y[i];
                shift = std::max(shift, std::abs(inc - increments[k][i]));
                increments[k][i] = inc;
                x[i] = y[i];
            }
        }
        if (max_abs_diff(before, x) < tolerance && shift < tolerance) return sweep;
    }
    return max_sweeps;
}

}  // namespace finnet
