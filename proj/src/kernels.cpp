#include "ym/kernels.hpp"

#include "kernels_detail.hpp"
#include "ym/errors.hpp"

namespace ym {

namespace {

const KernelSet kScalar{"scalar", &detail::relax_step_scalar,
                        &detail::residual_max_scalar};
#ifdef YM_HAVE_AVX2_KERNELS
const KernelSet kAvx2{"avx2", &detail::relax_step_avx2,
                      &detail::residual_max_avx2};
#endif
#ifdef YM_HAVE_NEON_KERNELS
const KernelSet kNeon{"neon", &detail::relax_step_neon,
                      &detail::residual_max_neon};
#endif

}  // namespace

bool backend_available(KernelBackend b) {
    switch (b) {
        case KernelBackend::scalar:
            return true;
        case KernelBackend::avx2:
#ifdef YM_HAVE_AVX2_KERNELS
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
        case KernelBackend::neon:
#ifdef YM_HAVE_NEON_KERNELS
            return true;  // baseline on AArch64 builds
#else
            return false;
#endif
    }
    return false;
}

std::vector<KernelBackend> available_backends() {
    std::vector<KernelBackend> out{KernelBackend::scalar};
    if (backend_available(KernelBackend::avx2)) out.push_back(KernelBackend::avx2);
    if (backend_available(KernelBackend::neon)) out.push_back(KernelBackend::neon);
    return out;
}

KernelBackend preferred_backend() {
    if (backend_available(KernelBackend::avx2)) return KernelBackend::avx2;
    if (backend_available(KernelBackend::neon)) return KernelBackend::neon;
    return KernelBackend::scalar;
}

const KernelSet& kernel_set(KernelBackend b) {
    if (!backend_available(b)) {
        throw DomainError(std::string("kernel backend unavailable: ") +
                          backend_name(b));
    }
    switch (b) {
        case KernelBackend::scalar:
            return kScalar;
        case KernelBackend::avx2:
#ifdef YM_HAVE_AVX2_KERNELS
            return kAvx2;
#else
            break;
#endif
        case KernelBackend::neon:
#ifdef YM_HAVE_NEON_KERNELS
            return kNeon;
#else
            break;
#endif
    }
    throw DomainError("kernel backend unavailable");
}

const char* backend_name(KernelBackend b) {
    switch (b) {
        case KernelBackend::scalar:
            return "scalar";
        case KernelBackend::avx2:
            return "avx2";
        case KernelBackend::neon:
            return "neon";
    }
    return "unknown";
}

KernelBackend backend_from_name(const std::string& name) {
    if (name == "auto") return preferred_backend();
    if (name == "scalar") return KernelBackend::scalar;
    if (name == "avx2") return KernelBackend::avx2;
    if (name == "neon") return KernelBackend::neon;
    throw DomainError("unknown kernel backend: " + name);
}

}  // namespace ym
