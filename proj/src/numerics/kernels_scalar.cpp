#include "finnet/numerics/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace finnet::kernels::scalar {

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < rows; ++i) {
        y[i] = dot(a.subspan(i * cols, cols), x);
    }
}

void gemm(std::span<const double> a, std::span<const double> b, std::span<double> c,
          std::size_t m, std::size_t k, std::size_t n) {
    std::fill(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(m * n), 0.0);
    // i-p-j order so the innermost loop streams rows of b and c
    for (std::size_t i = 0; i < m; ++i) {
        auto crow = c.subspan(i * n, n);
        for (std::size_t p = 0; p < k; ++p) {
            const double aip = a[i * k + p];
            if (aip == 0.0) continue;
            axpy(aip, b.subspan(p * n, n), crow);
        }
    }
}

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

}  // namespace finnet::kernels::scalar
