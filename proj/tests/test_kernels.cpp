#include <doctest.h>

#include <random>
#include <vector>

#include "qrep/kernels.hpp"
#include "qrep/repeater.hpp"

using namespace qrep;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    for (auto& x : v) x = {g(rng), g(rng)};
    return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Restores the dispatch choice after a test that overrides it.
struct DispatchGuard {
    kernels::Variant saved = kernels::active().variant;
    ~DispatchGuard() { kernels::select(saved); }
};

}  // namespace

TEST_CASE("scalar kernel is always available") {
    CHECK(kernels::scalar().variant == kernels::Variant::Scalar);
    CHECK(kernels::select(kernels::Variant::Scalar));
    CHECK(kernels::active().variant == kernels::Variant::Scalar);
    kernels::select(kernels::avx2() ? kernels::Variant::Avx2 : kernels::Variant::Scalar);
}

TEST_CASE("AVX2 kernels match the scalar reference") {
    const auto* simd = kernels::avx2();
    if (!simd) {
        MESSAGE("AVX2 variant not available on this build/CPU; skipping");
        return;
    }
    const auto& ref = kernels::scalar();
    std::mt19937_64 rng(11);

    SUBCASE("caxpy, odd and even lengths") {
        for (std::size_t n : {0, 1, 2, 3, 7, 16, 65}) {
            const auto x = random_vec(n, rng);
            auto y1 = random_vec(n, rng);
            auto y2 = y1;
            const cplx a{0.37, -1.9};
            ref.caxpy(a, x.data(), y1.data(), n);
            simd->caxpy(a, x.data(), y2.data(), n);
            CHECK(max_diff(y1, y2) < 1e-13);
        }
    }
    SUBCASE("kron_accumulate") {
        for (auto [m, k] : {std::pair<std::size_t, std::size_t>{4, 4}, {16, 4}, {2, 8}, {1, 1}}) {
            const auto a = random_vec(m * m, rng);
            const auto b = random_vec(k * k, rng);
            auto o1 = random_vec(m * k * m * k, rng);
            auto o2 = o1;
            ref.kron_accumulate({0.5, 0.25}, a.data(), m, b.data(), k, o1.data());
            simd->kron_accumulate({0.5, 0.25}, a.data(), m, b.data(), k, o2.data());
            CHECK(max_diff(o1, o2) < 1e-12);
        }
    }
}

TEST_CASE("end-to-end state is the same under both kernel variants") {
    if (!kernels::avx2()) return;
    DispatchGuard guard;
    const NoiseParams p{0.97, 0.02, 0.004};
    kernels::select(kernels::Variant::Scalar);
    const auto a = golden_pipeline(2, p, EncoderMode::Coded, true);
    kernels::select(kernels::Variant::Avx2);
    const auto b = golden_pipeline(2, p, EncoderMode::Coded, true);
    CHECK(max_abs_diff(a.state, b.state) < 1e-12);
    CHECK(a.p_golden == doctest::Approx(b.p_golden).epsilon(1e-12));
}
