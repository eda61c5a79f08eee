#include "qrep/kernels.hpp"

namespace qrep::kernels {
namespace {

void caxpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void kron_accumulate_scalar(cplx s, const cplx* a, std::size_t m, const cplx* b, std::size_t k,
                            cplx* out) {
    const std::size_t n = m * k;
    for (std::size_t ra = 0; ra < m; ++ra) {
        for (std::size_t ca = 0; ca < m; ++ca) {
            const cplx coef = s * a[ra * m + ca];
            if (coef == cplx{}) continue;
            for (std::size_t rb = 0; rb < k; ++rb) {
                cplx* dst = out + (ra * k + rb) * n + ca * k;
                const cplx* src = b + rb * k;
                for (std::size_t cb = 0; cb < k; ++cb) dst[cb] += coef * src[cb];
            }
        }
    }
}

}  // namespace

namespace detail {
const KernelTable kScalar{Variant::Scalar, &caxpy_scalar, &kron_accumulate_scalar};
}  // namespace detail

}  // namespace qrep::kernels
