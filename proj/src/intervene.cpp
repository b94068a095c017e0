#include "finnet/intervene.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "finnet/invariance.hpp"
#include "finnet/numerics/projected_gradient.hpp"
#include "finnet/numerics/simplex.hpp"

namespace finnet {

InjectionResult minimal_injection(const Polyhedron& target, std::span<const double> x,
                                  bool nonnegative) {
    const std::size_t n = target.dimension();
    if (x.size() != n) throw DimensionMismatch("minimal_injection: state has wrong length");
    LinearProgram lp;
    lp.objective.assign(n, 1.0);
    lp.constraints = target.A();
    lp.bounds = sub(target.b(), target.A() * x);
    if (nonnegative) lp.lower_bounds.assign(n, 0.0);

    const auto res = lp_solve(lp);
    if (res.status == LpStatus::Infeasible) {
        throw InfeasibleProblem("minimal_injection: target region is empty");
    }
    if (res.status == LpStatus::Unbounded) {
        throw ModelError("minimal_injection: injection LP is unbounded");
    }
    InjectionResult out;
    out.v = res.solution;
    out.objective = res.objective;
    out.certificate_residual = res.certificate_residual;
    out.margin = target.margin(add(x, out.v));
    return out;
}

double reallocation_objective(const Matrix& D, std::span<const double> p,
                              std::span<const double> v) {
    Vector colsum(D.cols(), 0.0);
    for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = 0; j < D.cols(); ++j) colsum[j] += D(i, j);
    return norm2(sub(D * p, v)) + norm2(colsum);
}

namespace {

// The threshold constraint as halfspaces a_i . vec(D) >= b_i with
// a_i[(k, j)] = M_ik p_j, M = (I - C)^{-1}.
struct ThresholdRows {
    std::vector<Vector> a;
    Vector b;
};

ThresholdRows threshold_rows(const ShiftedModel& model, double epsilon) {
    const std::size_t n = model.size();
    const auto& p = model.network().prices;
    const std::size_t m = p.size();
    ThresholdRows rows;
    const Matrix M = LuFactorization(Matrix::identity(n) - model.C()).inverse();
    for (std::size_t i = 0; i < n; ++i) {
        Vector a(n * m);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < m; ++j) a[k * m + j] = M(i, k) * p[j];
        rows.a.push_back(std::move(a));
        rows.b.push_back(model.network().thresholds[i] + epsilon);
    }
    return rows;
}

void project_columns(std::span<double> d, std::size_t n, std::size_t m) {
    Vector col(n);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = d[i * m + j];
        project_capped_simplex(col, 1.0);
        for (std::size_t i = 0; i < n; ++i) d[i * m + j] = col[i];
    }
}

ProjectorFn make_projector(const ShiftedModel& model, double epsilon) {
    const std::size_t n = model.size();
    const std::size_t m = model.network().prices.size();
    auto rows = std::make_shared<ThresholdRows>(threshold_rows(model, epsilon));
    std::vector<ProjectorFn> sets;
    sets.emplace_back([n, m](std::span<double> d) { project_columns(d, n, m); });
    for (std::size_t i = 0; i < n; ++i) {
        sets.emplace_back([rows, i](std::span<double> d) {
            project_halfspace(d, rows->a[i], rows->b[i]);
        });
    }
    return [sets = std::move(sets)](std::span<double> d) { dykstra_project(d, sets); };
}

}  // namespace

void project_reallocation(const ShiftedModel& model, Matrix& D, double epsilon) {
    make_projector(model, epsilon)(D.data());
}

void reallocation_residuals(const ShiftedModel& model, const Matrix& D, double epsilon,
                            ReallocationResult& out) {
    const std::size_t n = D.rows(), m = D.cols();
    out.column_excess = 0.0;
    out.negativity = 0.0;
    out.threshold_shortfall = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += D(i, j);
            out.negativity = std::max(out.negativity, -D(i, j));
        }
        out.column_excess = std::max(out.column_excess, s - 1.0);
    }
    const Vector level = model.resolvent(D * model.network().prices);
    for (std::size_t i = 0; i < n; ++i) {
        const double need = model.network().thresholds[i] + epsilon;
        out.threshold_shortfall = std::max(out.threshold_shortfall, need - level[i]);
    }
}

ReallocationResult asset_reallocation(const ShiftedModel& model, std::span<const double> v,
                                      const ReallocationOptions& opts) {
    const std::size_t n = model.size();
    const auto& p = model.network().prices;
    const std::size_t m = p.size();
    if (v.size() != n) throw DimensionMismatch("asset_reallocation: v has wrong length");
    const Vector target(v.begin(), v.end());

    ConvexProgram prog;
    prog.tolerance = opts.tolerance;
    prog.max_iterations = opts.max_iterations;
    prog.initial_step = opts.initial_step;
    prog.project = make_projector(model, opts.epsilon);
    prog.objective = [&](std::span<const double> d, std::span<double> grad) {
        Vector resid(n, 0.0), colsum(m, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                resid[i] += d[i * m + j] * p[j];
                colsum[j] += d[i * m + j];
            }
            resid[i] -= target[i];
        }
        const double a = norm2(resid), b = norm2(colsum);
        const double mu = opts.tie_break;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                double g = 2.0 * mu * resid[i] * p[j];
                if (a > 0.0) g += resid[i] * p[j] / a;
                if (b > 0.0) g += colsum[j] / b;
                grad[i * m + j] = g;
            }
        return a + b + mu * a * a;
    };

    const Matrix& start = model.network().asset_shares;
    auto res = convex_solve(prog, start.data());

    ReallocationResult out;
    out.D = Matrix(n, m, std::move(res.point));
    out.objective = reallocation_objective(out.D, p, v);
    out.iterations = res.iterations;
    out.converged = res.converged;
    reallocation_residuals(model, out.D, opts.epsilon, out);

    const double slack = tol::kOptimality;
    if (out.negativity > slack) throw InfeasibleProblem("asset_reallocation: D >= 0 violated");
    if (out.column_excess > slack) {
        throw InfeasibleProblem("asset_reallocation: column sums of D exceed 1");
    }
    if (out.threshold_shortfall > slack) {
        throw InfeasibleProblem(
            "asset_reallocation: (I - C)^{-1} D p >= V_lower + eps cannot be met");
    }
    return out;
}

InterventionPlan drive_to_invariant(const ShiftedModel& model, std::span<const double> x0,
                                    const InterventionOptions& opts) {
    const std::size_t n = model.size();
    if (x0.size() != n) throw DimensionMismatch("drive_to_invariant: x0 has wrong length");
    InterventionPlan plan;
    plan.x0.assign(x0.begin(), x0.end());
    plan.target = maximal_invariant_region(model, OrthantIndex::healthy(n));
    Vector v = minimal_injection(plan.target, x0, opts.nonnegative_injection).v;
    plan.initial_v = v;

    Vector x = plan.x0;
    ShiftedModel current = model;
    while (!plan.target.contains(x, tol::kState)) {
        if (plan.steps.size() >= opts.max_iterations) {
            plan.iteration_cap_reached = true;
            return plan;
        }
        auto realloc = asset_reallocation(current, v, opts.reallocation);
        current = model.with_asset_shares(realloc.D);
        x = current.step(x);
        v = sub(v, x);
        if (opts.clamped_update)
            for (double& e : v) e = std::max(e, 0.0);
        InterventionStep step;
        step.D = std::move(realloc.D);
        step.x = x;
        step.v = v;
        step.objective = realloc.objective;
        step.feasible = true;
        plan.steps.push_back(std::move(step));
    }
    plan.success = true;
    return plan;
}

}  // namespace finnet
