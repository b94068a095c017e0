#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finnet/numerics/dense_matrix.hpp"

namespace finnet {

/// {x : A x >= b}. Each row remembers the block (matrix power t) that
/// produced it.
class Polyhedron {
public:
    Polyhedron() = default;
    explicit Polyhedron(std::size_t dimension) : a_(0, dimension) {}
    Polyhedron(Matrix a, Vector b, std::vector<std::size_t> blocks = {});

    std::size_t dimension() const noexcept { return a_.cols(); }
    std::size_t row_count() const noexcept { return b_.size(); }
    const Matrix& A() const noexcept { return a_; }
    const Vector& b() const noexcept { return b_; }
    const std::vector<std::size_t>& blocks() const noexcept { return blocks_; }

    /// Largest block index present, or 0 when empty.
    std::size_t horizon() const noexcept;

    void append(const Matrix& a, std::span<const double> b, std::size_t block);

    /// min_i (A x - b)_i; positive inside, negative outside. +inf with no rows.
    double margin(std::span<const double> x) const;
    bool contains(std::span<const double> x, double tol = 0.0) const;

    /// Rows whose block index is <= t.
    Polyhedron truncated(std::size_t t) const;

    std::string label;        // which construction produced the rows
    bool certified = false;   // true when the set is known to be invariant

private:
    Matrix a_;
    Vector b_;
    std::vector<std::size_t> blocks_;
};

/// True when every x in p satisfies a.x >= beta - tol (checked by LP).
bool implies(const Polyhedron& p, std::span<const double> a, double beta, double tol = 1e-9);

/// p subset of q, i.e. every row of q is implied by p.
bool subset_of(const Polyhedron& p, const Polyhedron& q, double tol = 1e-9);

/// Mutual inclusion.
bool equivalent(const Polyhedron& p, const Polyhedron& q, double tol = 1e-9);

/// Copy of p without rows implied by the remaining ones.
Polyhedron prune_redundant(const Polyhedron& p, double tol = 1e-9);

/// Per-coordinate [min, max] over p; nullopt entries denote unbounded sides.
/// Throws InfeasibleProblem when p is empty.
std::vector<std::pair<std::optional<double>, std::optional<double>>> bounding_box(
    const Polyhedron& p);

bool is_empty(const Polyhedron& p);

}  // namespace finnet
