#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Dense inner loops shared by every analysis. Each kernel has a scalar
// reference implementation and, on x86-64 builds, an AVX2/FMA variant. The
// dispatching entry points pick the widest variant the CPU supports the
// first time they are called; tests can force a backend.
namespace finnet::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b) noexcept;

/// True when the backend was compiled in and the running CPU supports it.
bool backend_available(Backend b) noexcept;

Backend active_backend() noexcept;

/// Throws std::invalid_argument when the backend is not available.
void set_backend(Backend b);

double dot(std::span<const double> x, std::span<const double> y);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// y = A x with A row-major rows x cols.
void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y);

/// c = a b with a (m x k), b (k x n), c (m x n), all row-major.
void gemm(std::span<const double> a, std::span<const double> b, std::span<double> c,
          std::size_t m, std::size_t k, std::size_t n);

/// max_i |x_i - y_i|
double max_abs_diff(std::span<const double> x, std::span<const double> y);

namespace scalar {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y);
void gemm(std::span<const double> a, std::span<const double> b, std::span<double> c,
          std::size_t m, std::size_t k, std::size_t n);
double max_abs_diff(std::span<const double> x, std::span<const double> y);
}  // namespace scalar

#if defined(FINNET_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y);
void gemm(std::span<const double> a, std::span<const double> b, std::span<double> c,
          std::size_t m, std::size_t k, std::size_t n);
double max_abs_diff(std::span<const double> x, std::span<const double> y);
}  // namespace avx2
#endif

}  // namespace finnet::kernels
