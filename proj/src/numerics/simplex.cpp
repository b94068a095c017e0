#include "finnet/numerics/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "finnet/errors.hpp"
#include "finnet/numerics/kernels.hpp"

namespace finnet {

std::string_view to_string(LpStatus s) noexcept {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-10;
constexpr std::size_t kMaxPivots = 200000;

enum class ColumnKind { Plus, Minus, Shifted, Slack, Artificial };

struct Column {
    ColumnKind kind;
    std::size_t index;  // original variable or row
};

// Dense tableau: rows 0..m-1 are constraints, row m is the reduced-cost row.
// The last column holds the right-hand side.
class Tableau {
public:
    Tableau(std::size_t m, std::size_t ncols)
        : m_(m), ncols_(ncols), stride_(ncols + 1), t_((m + 1) * (ncols + 1), 0.0),
          basis_(m, 0) {}

    double& at(std::size_t i, std::size_t j) { return t_[i * stride_ + j]; }
    double at(std::size_t i, std::size_t j) const { return t_[i * stride_ + j]; }
    double& rhs(std::size_t i) { return t_[i * stride_ + ncols_]; }
    double rhs(std::size_t i) const { return t_[i * stride_ + ncols_]; }
    std::span<double> row(std::size_t i) { return {t_.data() + i * stride_, stride_}; }

    std::size_t m() const { return m_; }
    std::size_t ncols() const { return ncols_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t r, std::size_t c) {
        auto prow = row(r);
        const double inv = 1.0 / prow[c];
        for (double& v : prow) v *= inv;
        prow[c] = 1.0;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            const double f = at(i, c);
            if (f == 0.0) continue;
            kernels::axpy(-f, prow, row(i));
            at(i, c) = 0.0;
        }
        basis_[r] = c;
    }

    // Set the cost row to c - c_B^T T.
    void load_costs(const Vector& cost) {
        auto crow = row(m_);
        std::fill(crow.begin(), crow.end(), 0.0);
        for (std::size_t j = 0; j < ncols_; ++j) crow[j] = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = cost[basis_[i]];
            if (cb != 0.0) kernels::axpy(-cb, row(i), crow);
        }
    }

    enum class Outcome { Optimal, Unbounded };

    // Bland's rule: lowest-index improving column, ties in the ratio test
    // broken by lowest basic variable index.
    Outcome run(const std::vector<bool>& allowed, std::size_t& pivots) {
        while (true) {
            std::size_t enter = ncols_;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (allowed[j] && at(m_, j) < -kCostEps) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols_) return Outcome::Optimal;

            std::size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = at(i, enter);
                if (a <= kPivotEps) continue;
                const double ratio = std::max(rhs(i), 0.0) / a;
                if (leave == m_) {
                    best = ratio;
                    leave = i;
                    continue;
                }
                const double slack = 1e-12 * (1.0 + std::abs(best));
                if (ratio < best - slack) {
                    best = ratio;
                    leave = i;
                } else if (ratio <= best + slack && basis_[i] < basis_[leave]) {
                    best = std::min(best, ratio);
                    leave = i;
                }
            }
            if (leave == m_) return Outcome::Unbounded;
            pivot(leave, enter);
            if (++pivots > kMaxPivots) throw ModelError("simplex: pivot limit exceeded");
        }
    }

private:
    std::size_t m_;
    std::size_t ncols_;
    std::size_t stride_;
    std::vector<double> t_;
    std::vector<std::size_t> basis_;
};

void validate_shapes(const LinearProgram& lp) {
    const std::size_t n = lp.objective.size();
    const std::size_t m = lp.bounds.size();
    if (m > 0 && (lp.constraints.rows() != m || lp.constraints.cols() != n)) {
        throw DimensionMismatch("LinearProgram: constraint matrix shape does not match");
    }
    if (!lp.lower_bounds.empty() && lp.lower_bounds.size() != n) {
        throw DimensionMismatch("LinearProgram: lower_bounds has wrong length");
    }
    auto finite = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    if (!finite(lp.objective) || !finite(lp.bounds) || !lp.constraints.all_finite()) {
        throw std::invalid_argument("LinearProgram: non-finite coefficient");
    }
    for (const auto& lb : lp.lower_bounds) {
        if (lb && !std::isfinite(*lb)) {
            throw std::invalid_argument("LinearProgram: non-finite lower bound");
        }
    }
}

}  // namespace

double lp_certificate_residual(const LinearProgram& lp, std::span<const double> z,
                               std::span<const double> y) {
    const std::size_t n = lp.variable_count();
    const std::size_t m = lp.row_count();
    double worst = 0.0;
    Vector grad(lp.objective);
    for (std::size_t i = 0; i < m; ++i) {
        const auto a = lp.constraints.row(i);
        const double slack = kernels::dot(a, z) - lp.bounds[i];
        worst = std::max(worst, -slack);
        worst = std::max(worst, -y[i]);
        worst = std::max(worst, std::abs(y[i] * slack));
        kernels::axpy(-y[i], a, grad);
    }
    for (std::size_t j = 0; j < n; ++j) {
        const bool bounded = !lp.lower_bounds.empty() && lp.lower_bounds[j].has_value();
        if (bounded) {
            const double gap = z[j] - *lp.lower_bounds[j];
            worst = std::max(worst, -gap);
            worst = std::max(worst, -grad[j]);
            worst = std::max(worst, std::abs(grad[j] * gap));
        } else {
            worst = std::max(worst, std::abs(grad[j]));
        }
    }
    return worst;
}

LpResult lp_solve(const LinearProgram& lp) {
    validate_shapes(lp);
    const std::size_t n = lp.variable_count();
    const std::size_t m = lp.row_count();

    LpResult result;
    result.solution.assign(n, 0.0);
    result.duals.assign(m, 0.0);

    // Column layout.
    std::vector<Column> cols;
    std::vector<std::size_t> plus_col(n), minus_col(n, SIZE_MAX);
    Vector shift(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const bool bounded = !lp.lower_bounds.empty() && lp.lower_bounds[j].has_value();
        if (bounded) {
            shift[j] = *lp.lower_bounds[j];
            plus_col[j] = cols.size();
            cols.push_back({ColumnKind::Shifted, j});
        } else {
            plus_col[j] = cols.size();
            cols.push_back({ColumnKind::Plus, j});
            minus_col[j] = cols.size();
            cols.push_back({ColumnKind::Minus, j});
        }
    }
    const std::size_t slack_begin = cols.size();
    for (std::size_t i = 0; i < m; ++i) cols.push_back({ColumnKind::Slack, i});

    // Shifted right-hand side b' = b - A l; rows with b' <= 0 are negated so
    // their slack can start in the basis.
    Vector rhs(m);
    std::vector<bool> flipped(m);
    std::vector<std::size_t> art_rows;
    for (std::size_t i = 0; i < m; ++i) {
        rhs[i] = lp.bounds[i] - kernels::dot(lp.constraints.row(i), shift);
        flipped[i] = rhs[i] <= 0.0;
        if (!flipped[i]) art_rows.push_back(i);
    }
    const std::size_t art_begin = cols.size();
    for (std::size_t i : art_rows) cols.push_back({ColumnKind::Artificial, i});

    const std::size_t ncols = cols.size();
    Tableau tab(m, ncols);
    for (std::size_t i = 0; i < m; ++i) {
        const double sgn = flipped[i] ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double a = sgn * lp.constraints(i, j);
            tab.at(i, plus_col[j]) = a;
            if (minus_col[j] != SIZE_MAX) tab.at(i, minus_col[j]) = -a;
        }
        tab.at(i, slack_begin + i) = -sgn;
        tab.rhs(i) = sgn * rhs[i];
        if (flipped[i]) tab.basis()[i] = slack_begin + i;
    }
    for (std::size_t a = 0; a < art_rows.size(); ++a) {
        const std::size_t i = art_rows[a];
        tab.at(i, art_begin + a) = 1.0;
        tab.basis()[i] = art_begin + a;
    }

    std::size_t pivots = 0;
    // Phase 1.
    if (!art_rows.empty()) {
        Vector cost(ncols, 0.0);
        for (std::size_t j = art_begin; j < ncols; ++j) cost[j] = 1.0;
        tab.load_costs(cost);
        std::vector<bool> allowed(ncols, true);
        tab.run(allowed, pivots);
        double infeas = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (tab.basis()[i] >= art_begin) infeas += std::max(tab.rhs(i), 0.0);
        if (infeas > 1e-9 * (1.0 + norm_inf(rhs))) {
            result.status = LpStatus::Infeasible;
            result.pivots = pivots;
            return result;
        }
        // Drive remaining zero-level artificials out of the basis.
        for (std::size_t i = 0; i < m; ++i) {
            if (tab.basis()[i] < art_begin) continue;
            for (std::size_t j = 0; j < art_begin; ++j) {
                if (std::abs(tab.at(i, j)) > 1e-9) {
                    tab.pivot(i, j);
                    ++pivots;
                    break;
                }
            }
            // A row with no structural entry left is redundant; its artificial
            // stays basic at zero and is never touched again.
        }
    }

    // Phase 2.
    Vector cost(ncols, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        cost[plus_col[j]] = lp.objective[j];
        if (minus_col[j] != SIZE_MAX) cost[minus_col[j]] = -lp.objective[j];
    }
    tab.load_costs(cost);
    std::vector<bool> allowed(ncols, true);
    for (std::size_t j = art_begin; j < ncols; ++j) allowed[j] = false;
    const auto outcome = tab.run(allowed, pivots);
    result.pivots = pivots;
    if (outcome == Tableau::Outcome::Unbounded) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    Vector values(ncols, 0.0);
    for (std::size_t i = 0; i < m; ++i) values[tab.basis()[i]] = std::max(tab.rhs(i), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double v = values[plus_col[j]];
        if (minus_col[j] != SIZE_MAX) v -= values[minus_col[j]];
        result.solution[j] = shift[j] + v;
    }
    for (std::size_t i = 0; i < m; ++i) result.duals[i] = tab.at(m, slack_begin + i);

    result.status = LpStatus::Optimal;
    result.objective = kernels::dot(lp.objective, result.solution);
    result.certificate_residual = lp_certificate_residual(lp, result.solution, result.duals);
    return result;
}

}  // namespace finnet
