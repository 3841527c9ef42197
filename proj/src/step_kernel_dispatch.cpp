#include <stdexcept>
#include <string>

#include "cqec/step_kernel.hpp"

namespace cqec {

bool avx2_available() {
#if defined(CQEC_HAVE_AVX2) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

StepFn select_step_fn(KernelKind kind, const StructuredPlan& plan) {
    switch (kind) {
        case KernelKind::Auto:
#ifdef CQEC_HAVE_AVX2
            if (plan.avx2_eligible() && avx2_available()) return sme_step_avx2;
#endif
            return sme_step_scalar;
        case KernelKind::Scalar:
            return sme_step_scalar;
        case KernelKind::Avx2:
#ifdef CQEC_HAVE_AVX2
            if (plan.avx2_eligible() && avx2_available()) return sme_step_avx2;
#endif
            throw std::runtime_error("avx2 kernel unavailable on this host/model");
        case KernelKind::Generic:
            throw std::invalid_argument("generic route does not use a fused kernel");
    }
    throw std::invalid_argument("unknown kernel kind");
}

const char* kernel_kind_name(KernelKind k) {
    switch (k) {
        case KernelKind::Auto: return "auto";
        case KernelKind::Generic: return "generic";
        case KernelKind::Scalar: return "scalar";
        case KernelKind::Avx2: return "avx2";
    }
    return "unknown";
}

KernelKind parse_kernel_kind(const std::string& name) {
    if (name == "auto") return KernelKind::Auto;
    if (name == "generic") return KernelKind::Generic;
    if (name == "scalar") return KernelKind::Scalar;
    if (name == "avx2") return KernelKind::Avx2;
    throw std::invalid_argument("unknown kernel kind: " + name);
}

}  // namespace cqec
