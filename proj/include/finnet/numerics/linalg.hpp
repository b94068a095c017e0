#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "finnet/numerics/dense_matrix.hpp"

namespace finnet {

/// LU factorization with partial pivoting, PA = LU, stored in place.
/// Construction throws SingularMatrix when a pivot magnitude is at or below
/// tol::kPivot.
class LuFactorization {
public:
    explicit LuFactorization(Matrix a);

    std::size_t size() const noexcept { return lu_.rows(); }
    Vector solve(std::span<const double> b) const;
    Matrix inverse() const;

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

Vector solve_linear(const Matrix& a, std::span<const double> b);

/// M^t by repeated multiplication; M^0 is the identity.
Matrix matrix_power(const Matrix& m, std::size_t t);

/// |A x - b|_inf
double residual_inf(const Matrix& a, std::span<const double> x, std::span<const double> b);

}  // namespace finnet
