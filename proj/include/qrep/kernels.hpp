// Data-parallel inner loops with a scalar reference and SIMD variants.
//
// The scalar variant is the reference; SIMD variants must agree with it to
// rounding (see tests/test_kernels.cpp). The variant is chosen once at
// startup from CPU features and can be forced with QREP_KERNELS=scalar|avx2.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qrep::kernels {

using cplx = std::complex<double>;

enum class Variant { Scalar, Avx2 };

struct KernelTable {
    Variant variant;
    /// y += a * x
    void (*caxpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
    /// out += s * (A (x) B), A is m x m, B is k x k, out is (m k) x (m k); all row-major.
    void (*kron_accumulate)(cplx s, const cplx* a, std::size_t m, const cplx* b, std::size_t k,
                            cplx* out);
};

const KernelTable& active();
const KernelTable& scalar();
/// nullptr when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2();

/// Override the dispatch (tests and benchmarking). Returns false when the
/// requested variant is unavailable.
bool select(Variant v);
std::string_view name(Variant v);

namespace detail {
extern const KernelTable kScalar;
#if defined(QREP_WITH_AVX2)
extern const KernelTable kAvx2;
#endif
}  // namespace detail

}  // namespace qrep::kernels
