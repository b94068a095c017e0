#include "finnet/numerics/kernels.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

namespace finnet::kernels {

namespace {

struct Table {
    Backend backend;
    double (*dot)(std::span<const double>, std::span<const double>);
    void (*axpy)(double, std::span<const double>, std::span<double>);
    void (*gemv)(std::span<const double>, std::size_t, std::size_t, std::span<const double>,
                 std::span<double>);
    void (*gemm)(std::span<const double>, std::span<const double>, std::span<double>,
                 std::size_t, std::size_t, std::size_t);
    double (*max_abs_diff)(std::span<const double>, std::span<const double>);
};

constexpr Table kScalarTable{Backend::Scalar, scalar::dot, scalar::axpy, scalar::gemv,
                             scalar::gemm, scalar::max_abs_diff};

#if defined(FINNET_HAVE_AVX2)
constexpr Table kAvx2Table{Backend::Avx2, avx2::dot, avx2::axpy, avx2::gemv, avx2::gemm,
                           avx2::max_abs_diff};
#endif

bool cpu_has_avx2() noexcept {
#if defined(FINNET_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Table* select_default() noexcept {
#if defined(FINNET_HAVE_AVX2)
    if (cpu_has_avx2()) return &kAvx2Table;
#endif
    return &kScalarTable;
}

std::atomic<const Table*>& table_slot() noexcept {
    static std::atomic<const Table*> slot{select_default()};
    return slot;
}

const Table& table() noexcept { return *table_slot().load(std::memory_order_acquire); }

}  // namespace

std::string_view backend_name(Backend b) noexcept {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

bool backend_available(Backend b) noexcept {
    if (b == Backend::Scalar) return true;
    return cpu_has_avx2();
}

Backend active_backend() noexcept { return table().backend; }

void set_backend(Backend b) {
    if (!backend_available(b)) {
        throw std::invalid_argument("kernel backend '" + std::string(backend_name(b)) +
                                    "' is not available on this build/CPU");
    }
#if defined(FINNET_HAVE_AVX2)
    if (b == Backend::Avx2) {
        table_slot().store(&kAvx2Table, std::memory_order_release);
        return;
    }
#endif
    table_slot().store(&kScalarTable, std::memory_order_release);
}

double dot(std::span<const double> x, std::span<const double> y) { return table().dot(x, y); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    table().axpy(alpha, x, y);
}

void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y) {
    table().gemv(a, rows, cols, x, y);
}

void gemm(std::span<const double> a, std::span<const double> b, std::span<double> c,
          std::size_t m, std::size_t k, std::size_t n) {
    table().gemm(a, b, c, m, k, n);
}

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
    return table().max_abs_diff(x, y);
}

}  // namespace finnet::kernels
