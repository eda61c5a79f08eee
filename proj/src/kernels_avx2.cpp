// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "qrep/kernels.hpp"

#include <immintrin.h>

namespace qrep::kernels {
namespace {

// One __m256d holds two complex doubles laid out (re0, im0, re1, im1).
inline __m256d cmul(__m256d ar, __m256d ai, __m256d x) {
    const __m256d swapped = _mm256_permute_pd(x, 0b0101);
    return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, swapped));
}

void caxpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    auto* xd = reinterpret_cast<const double*>(x);
    auto* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul(ar, ai, xv)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void kron_accumulate_avx2(cplx s, const cplx* a, std::size_t m, const cplx* b, std::size_t k,
                          cplx* out) {
    const std::size_t n = m * k;
    for (std::size_t ra = 0; ra < m; ++ra) {
        for (std::size_t ca = 0; ca < m; ++ca) {
            const cplx coef = s * a[ra * m + ca];
            if (coef == cplx{}) continue;
            for (std::size_t rb = 0; rb < k; ++rb) {
                caxpy_avx2(coef, b + rb * k, out + (ra * k + rb) * n + ca * k, k);
            }
        }
    }
}

}  // namespace

namespace detail {
const KernelTable kAvx2{Variant::Avx2, &caxpy_avx2, &kron_accumulate_avx2};
}  // namespace detail

}  // namespace qrep::kernels
