#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "cqec/complex_matrix.hpp"
#include "cqec/sme.hpp"

namespace cqec {

// The operators of the bit-flip model are structured: measurement operators
// are +-1 diagonals, flip and feedback generators are XOR-mask permutations.
// A matched plan lets the Euler–Maruyama step run as elementwise/permutation
// arithmetic over the dense state instead of generic matrix products.
struct StructuredPlan {
    static constexpr int kMaxChannels = 4;

    int dim = 0;
    int n_meas = 0;
    int n_flip = 0;
    int n_fb = 0;

    std::array<std::array<double, 8>, kMaxChannels> meas_diag{};  // +-1 signs
    std::array<int, kMaxChannels> flip_mask{};                    // sigma(i) = i ^ mask
    std::array<int, kMaxChannels> fb_mask{};
    std::array<double, kMaxChannels> kappa{}, eta{};
    std::array<double, kMaxChannels> gamma_dt{};
    double dt = 0.0;

    // 1 + sum_m kappa_m dt (a_mi a_mj - 1) - sum_q gamma_q dt, row-major.
    std::array<double, 64> drift{};
    // Same, duplicated per re/im lane for the vector kernel.
    alignas(32) std::array<double, 128> drift_dup{};

    bool avx2_eligible() const;
};

// Builds a plan when every operator fits the structured form (zero
// Hamiltonian, +-1 diagonal measurements, XOR-permutation flips), otherwise
// nullopt and callers stay on the generic route.
std::optional<StructuredPlan> match_structured(const ChannelSet& cs,
                                               const FeedbackHamiltonian& fb, double dt);

enum class KernelKind { Auto, Generic, Scalar, Avx2 };

// One fused Euler–Maruyama step: out must not alias rho. lambda_dt[q] =
// lambda_q * dt; s[m] is the innovation coefficient; mu[m] the pre-step
// means of rho. Hermitizes and renormalizes out; returns the trace found
// before renormalization.
using StepFn = double (*)(const cx* rho, cx* out, const StructuredPlan& plan,
                          const double* lambda_dt, const double* s, const double* mu);

double sme_step_scalar(const cx* rho, cx* out, const StructuredPlan& plan,
                       const double* lambda_dt, const double* s, const double* mu);
#ifdef CQEC_HAVE_AVX2
double sme_step_avx2(const cx* rho, cx* out, const StructuredPlan& plan, const double* lambda_dt,
                     const double* s, const double* mu);
#endif

bool avx2_available();

// Resolves Auto to the fastest eligible variant; throws when an explicitly
// requested variant cannot run on this plan or host.
StepFn select_step_fn(KernelKind kind, const StructuredPlan& plan);

const char* kernel_kind_name(KernelKind k);
KernelKind parse_kernel_kind(const std::string& name);

// mu[m] = sum_i diag_m[i] * Re rho[i][i]
void plan_means(const cx* rho, const StructuredPlan& plan, double* mu);

// Shared step tail: (m + m^dag)/2 in place, then divide by the trace.
// Returns the trace found. Throws when it is not positive and finite.
double hermitize_normalize(cx* m, int n);

}  // namespace cqec
