#include "finnet/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "finnet/errors.hpp"
#include "finnet/numerics/kernels.hpp"
#include "finnet/numerics/simplex.hpp"

namespace finnet {

Polyhedron::Polyhedron(Matrix a, Vector b, std::vector<std::size_t> blocks)
    : a_(std::move(a)), b_(std::move(b)), blocks_(std::move(blocks)) {
    if (a_.rows() != b_.size()) throw DimensionMismatch("Polyhedron: A and b row counts differ");
    if (blocks_.empty()) blocks_.assign(b_.size(), 0);
    if (blocks_.size() != b_.size()) throw DimensionMismatch("Polyhedron: block labels");
}

std::size_t Polyhedron::horizon() const noexcept {
    return blocks_.empty() ? 0 : *std::max_element(blocks_.begin(), blocks_.end());
}

void Polyhedron::append(const Matrix& a, std::span<const double> b, std::size_t block) {
    if (a.rows() != b.size()) throw DimensionMismatch("Polyhedron::append: rows differ");
    if (row_count() == 0 && a_.cols() == 0) {
        a_ = Matrix(0, a.cols());
    }
    a_ = vstack(a_, a);
    b_.insert(b_.end(), b.begin(), b.end());
    blocks_.insert(blocks_.end(), b.size(), block);
}

double Polyhedron::margin(std::span<const double> x) const {
    if (x.size() != dimension()) throw DimensionMismatch("Polyhedron: point dimension");
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < row_count(); ++i)
        worst = std::min(worst, kernels::dot(a_.row(i), x) - b_[i]);
    return worst;
}

bool Polyhedron::contains(std::span<const double> x, double tol) const {
    return margin(x) >= -tol;
}

Polyhedron Polyhedron::truncated(std::size_t t) const {
    std::vector<Vector> rows;
    Vector b;
    std::vector<std::size_t> blocks;
    for (std::size_t i = 0; i < row_count(); ++i) {
        if (blocks_[i] > t) continue;
        rows.emplace_back(a_.row(i).begin(), a_.row(i).end());
        b.push_back(b_[i]);
        blocks.push_back(blocks_[i]);
    }
    Matrix a = rows.empty() ? Matrix(0, dimension()) : Matrix::from_rows(rows);
    Polyhedron out(std::move(a), std::move(b), std::move(blocks));
    out.label = label;
    out.certified = false;
    return out;
}

namespace {

LpResult minimize_over(const Polyhedron& p, std::span<const double> c) {
    LinearProgram lp;
    lp.objective.assign(c.begin(), c.end());
    lp.constraints = p.A();
    lp.bounds = p.b();
    return lp_solve(lp);
}

}  // namespace

bool implies(const Polyhedron& p, std::span<const double> a, double beta, double tol) {
    const auto res = minimize_over(p, a);
    switch (res.status) {
        case LpStatus::Infeasible: return true;  // empty set implies everything
        case LpStatus::Unbounded: return false;
        case LpStatus::Optimal: break;
    }
    return res.objective >= beta - tol * (1.0 + std::abs(beta));
}

bool subset_of(const Polyhedron& p, const Polyhedron& q, double tol) {
    if (p.dimension() != q.dimension()) throw DimensionMismatch("subset_of: dimensions differ");
    for (std::size_t i = 0; i < q.row_count(); ++i)
        if (!implies(p, q.A().row(i), q.b()[i], tol)) return false;
    return true;
}

bool equivalent(const Polyhedron& p, const Polyhedron& q, double tol) {
    return subset_of(p, q, tol) && subset_of(q, p, tol);
}

Polyhedron prune_redundant(const Polyhedron& p, double tol) {
    std::vector<bool> keep(p.row_count(), true);
    for (std::size_t i = 0; i < p.row_count(); ++i) {
        std::vector<Vector> rows;
        Vector b;
        for (std::size_t j = 0; j < p.row_count(); ++j) {
            if (j == i || !keep[j]) continue;
            rows.emplace_back(p.A().row(j).begin(), p.A().row(j).end());
            b.push_back(p.b()[j]);
        }
        Matrix a = rows.empty() ? Matrix(0, p.dimension()) : Matrix::from_rows(rows);
        if (implies(Polyhedron(std::move(a), std::move(b)), p.A().row(i), p.b()[i], tol))
            keep[i] = false;
    }
    std::vector<Vector> rows;
    Vector b;
    std::vector<std::size_t> blocks;
    for (std::size_t i = 0; i < p.row_count(); ++i) {
        if (!keep[i]) continue;
        rows.emplace_back(p.A().row(i).begin(), p.A().row(i).end());
        b.push_back(p.b()[i]);
        blocks.push_back(p.blocks()[i]);
    }
    Matrix a = rows.empty() ? Matrix(0, p.dimension()) : Matrix::from_rows(rows);
    Polyhedron out(std::move(a), std::move(b), std::move(blocks));
    out.label = p.label;
    out.certified = p.certified;
    return out;
}

bool is_empty(const Polyhedron& p) {
    Vector zero(p.dimension(), 0.0);
    return minimize_over(p, zero).status == LpStatus::Infeasible;
}

std::vector<std::pair<std::optional<double>, std::optional<double>>> bounding_box(
    const Polyhedron& p) {
    const std::size_t n = p.dimension();
    std::vector<std::pair<std::optional<double>, std::optional<double>>> box(n);
    Vector c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        c.assign(n, 0.0);
        c[i] = 1.0;
        auto lo = minimize_over(p, c);
        if (lo.status == LpStatus::Infeasible) throw InfeasibleProblem("bounding_box: empty set");
        if (lo.optimal()) box[i].first = lo.objective;
        c[i] = -1.0;
        auto hi = minimize_over(p, c);
        if (hi.optimal()) box[i].second = -hi.objective;
    }
    return box;
}

}  // namespace finnet
