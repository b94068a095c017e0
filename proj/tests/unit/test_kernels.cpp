#include <catch_amalgamated.hpp>

#include <random>

#include "finnet/numerics/kernels.hpp"

using namespace finnet;
namespace k = finnet::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST_CASE("scalar backend is always available") {
    REQUIRE(k::backend_available(k::Backend::Scalar));
    REQUIRE(k::backend_name(k::Backend::Scalar) == "scalar");
}

TEST_CASE("set_backend rejects unavailable backends") {
    if (!k::backend_available(k::Backend::Avx2)) {
        REQUIRE_THROWS_AS(k::set_backend(k::Backend::Avx2), std::invalid_argument);
    } else {
        k::set_backend(k::Backend::Avx2);
        REQUIRE(k::active_backend() == k::Backend::Avx2);
        k::set_backend(k::Backend::Scalar);
        REQUIRE(k::active_backend() == k::Backend::Scalar);
    }
}

#if defined(FINNET_HAVE_AVX2)
TEST_CASE("avx2 kernels match the scalar reference") {
    if (!k::backend_available(k::Backend::Avx2)) SKIP("CPU lacks AVX2/FMA");
    std::mt19937_64 rng(42);
    // Lengths around the vector width exercise the remainder loops.
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 100u, 257u}) {
        const auto x = random_vec(rng, n), y = random_vec(rng, n);
        const double tol = 1e-12 * (1.0 + static_cast<double>(n));
        CHECK(k::avx2::dot(x, y) == Catch::Approx(k::scalar::dot(x, y)).margin(tol));
        CHECK(k::avx2::max_abs_diff(x, y) == k::scalar::max_abs_diff(x, y));

        auto y1 = y, y2 = y;
        k::scalar::axpy(0.37, x, y1);
        k::avx2::axpy(0.37, x, y2);
        CHECK(k::scalar::max_abs_diff(y1, y2) <= tol);
    }
    for (auto [m, kk, n] : {std::tuple{1u, 1u, 1u}, {3u, 5u, 7u}, {8u, 8u, 8u}, {13u, 4u, 9u},
                            {10u, 10u, 10u}, {32u, 17u, 5u}}) {
        const auto a = random_vec(rng, m * kk), b = random_vec(rng, kk * n);
        const auto x = random_vec(rng, kk);
        std::vector<double> y1(m), y2(m);
        k::scalar::gemv(a, m, kk, x, y1);
        k::avx2::gemv(a, m, kk, x, y2);
        CHECK(k::scalar::max_abs_diff(y1, y2) <= 1e-12 * kk);

        std::vector<double> c1(m * n), c2(m * n);
        k::scalar::gemm(a, b, c1, m, kk, n);
        k::avx2::gemm(a, b, c2, m, kk, n);
        CHECK(k::scalar::max_abs_diff(c1, c2) <= 1e-12 * kk);
    }
}
#endif

TEST_CASE("dispatching entry points agree with the scalar reference") {
    std::mt19937_64 rng(7);
    const auto x = random_vec(rng, 33), y = random_vec(rng, 33);
    CHECK(k::dot(x, y) == Catch::Approx(k::scalar::dot(x, y)).margin(1e-12));
    std::vector<double> c(9), ref(9);
    const auto a = random_vec(rng, 9), b = random_vec(rng, 9);
    k::gemm(a, b, c, 3, 3, 3);
    k::scalar::gemm(a, b, ref, 3, 3, 3);
    CHECK(k::scalar::max_abs_diff(c, ref) <= 1e-12);
}
