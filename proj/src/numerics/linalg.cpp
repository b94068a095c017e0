#include "finnet/numerics/linalg.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "finnet/errors.hpp"
#include "finnet/numerics/kernels.hpp"
#include "finnet/numerics/tolerances.hpp"

namespace finnet {

LuFactorization::LuFactorization(Matrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
    if (!lu_.square()) throw DimensionMismatch("LU: matrix is not square");
    const std::size_t n = lu_.rows();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu_(i, k)) > best) {
                best = std::abs(lu_(i, k));
                piv = i;
            }
        }
        if (!(best > tol::kPivot)) {
            std::ostringstream msg;
            msg << "singular matrix: pivot " << best << " at column " << k;
            throw SingularMatrix(msg.str());
        }
        if (piv != k) {
            std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(piv).begin());
            std::swap(perm_[k], perm_[piv]);
        }
        const double inv = 1.0 / lu_(k, k);
        auto pivot_tail = lu_.row(k).subspan(k + 1);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu_(i, k) * inv;
            lu_(i, k) = f;
            if (f != 0.0) kernels::axpy(-f, pivot_tail, lu_.row(i).subspan(k + 1));
        }
    }
}

Vector LuFactorization::solve(std::span<const double> b) const {
    const std::size_t n = size();
    if (b.size() != n) throw DimensionMismatch("LU solve: right-hand side has wrong length");
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
    // forward substitution, unit lower triangle
    for (std::size_t i = 0; i < n; ++i) {
        double s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
    return x;
}

Matrix LuFactorization::inverse() const {
    const std::size_t n = size();
    Matrix inv(n, n);
    Vector e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        const Vector col = solve(e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
        e[j] = 0.0;
    }
    return inv;
}

Vector solve_linear(const Matrix& a, std::span<const double> b) {
    return LuFactorization(a).solve(b);
}

Matrix matrix_power(const Matrix& m, std::size_t t) {
    if (!m.square()) throw DimensionMismatch("matrix_power: matrix is not square");
    Matrix out = Matrix::identity(m.rows());
    for (std::size_t i = 0; i < t; ++i) out = out * m;
    return out;
}

double residual_inf(const Matrix& a, std::span<const double> x, std::span<const double> b) {
    return norm_inf(sub(a * x, b));
}

}  // namespace finnet
