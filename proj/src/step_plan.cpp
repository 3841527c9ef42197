#include <cmath>
#include <stdexcept>

#include "cqec/code.hpp"
#include "cqec/pauli.hpp"
#include "cqec/step_kernel.hpp"

namespace cqec {

namespace {

// Extracts the +-1 diagonal of an operator; false when any off-diagonal
// entry is nonzero or a diagonal entry is not exactly +-1.
bool extract_sign_diag(const ComplexMatrix& op, std::array<double, 8>& diag) {
    const int n = op.dim();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cx v = op.at(i, j);
            if (i == j) {
                if (v.imag() != 0.0 || (v.real() != 1.0 && v.real() != -1.0)) return false;
                diag[i] = v.real();
            } else if (v != cx{}) {
                return false;
            }
        }
    }
    return true;
}

// Extracts an XOR-mask permutation: op[i][j] == 1 iff j == i ^ mask.
bool extract_xor_mask(const ComplexMatrix& op, int& mask) {
    const int n = op.dim();
    int m = -1;
    for (int j = 0; j < n; ++j) {
        if (op.at(0, j) == cx{1.0, 0.0}) {
            if (m >= 0) return false;
            m = j;
        } else if (op.at(0, j) != cx{}) {
            return false;
        }
    }
    if (m <= 0) return false;  // identity (mask 0) stays on the generic route
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cx want = (j == (i ^ m)) ? cx{1.0, 0.0} : cx{};
            if (op.at(i, j) != want) return false;
        }
    mask = m;
    return true;
}

}  // namespace

bool StructuredPlan::avx2_eligible() const {
    if (dim != 8) return false;
    for (int q = 0; q < n_flip; ++q)
        if (flip_mask[q] != 1 && flip_mask[q] != 2 && flip_mask[q] != 4) return false;
    for (int q = 0; q < n_fb; ++q)
        if (fb_mask[q] != 1 && fb_mask[q] != 2 && fb_mask[q] != 4) return false;
    return true;
}

std::optional<StructuredPlan> match_structured(const ChannelSet& cs,
                                               const FeedbackHamiltonian& fb, double dt) {
    StructuredPlan p;
    p.dim = cs.dim();
    if (p.dim != 2 && p.dim != 4 && p.dim != 8) return std::nullopt;
    if (cs.hamiltonian.dim() != 0 && cs.hamiltonian.max_abs() != 0.0) return std::nullopt;
    if (cs.measurement.size() > StructuredPlan::kMaxChannels) return std::nullopt;
    if (cs.decoherence.size() > StructuredPlan::kMaxChannels) return std::nullopt;

    p.n_meas = static_cast<int>(cs.measurement.size());
    for (int m = 0; m < p.n_meas; ++m) {
        const auto& ch = cs.measurement[m];
        if (!extract_sign_diag(ch.op, p.meas_diag[m])) return std::nullopt;
        p.kappa[m] = ch.rate;
        p.eta[m] = ch.efficiency;
    }
    p.n_flip = static_cast<int>(cs.decoherence.size());
    double gamma_dt_total = 0.0;
    for (int q = 0; q < p.n_flip; ++q) {
        if (!extract_xor_mask(cs.decoherence[q].op, p.flip_mask[q])) return std::nullopt;
        p.gamma_dt[q] = cs.decoherence[q].rate * dt;
        gamma_dt_total += p.gamma_dt[q];
    }
    if (p.dim == 8) {
        p.n_fb = 3;
        for (int q = 0; q < 3; ++q) {
            int mask = 0;
            if (!extract_xor_mask(realize(flip_labels()[q]), mask)) return std::nullopt;
            p.fb_mask[q] = mask;
        }
    }
    p.dt = dt;
    for (int i = 0; i < p.dim; ++i) {
        for (int j = 0; j < p.dim; ++j) {
            double c = 1.0 - gamma_dt_total;
            for (int m = 0; m < p.n_meas; ++m)
                c += p.kappa[m] * dt * (p.meas_diag[m][i] * p.meas_diag[m][j] - 1.0);
            p.drift[i * 8 + j] = c;
            p.drift_dup[i * 16 + 2 * j] = c;
            p.drift_dup[i * 16 + 2 * j + 1] = c;
        }
    }
    return p;
}

double hermitize_normalize(cx* m, int n) {
    double tr = 0.0;
    for (int i = 0; i < n; ++i) {
        m[i * n + i] = cx{m[i * n + i].real(), 0.0};
        tr += m[i * n + i].real();
        for (int j = i + 1; j < n; ++j) {
            const cx h = 0.5 * (m[i * n + j] + std::conj(m[j * n + i]));
            m[i * n + j] = h;
            m[j * n + i] = std::conj(h);
        }
    }
    if (!std::isfinite(tr) || tr <= 0.0) throw std::runtime_error("state trace lost positivity");
    const double inv = 1.0 / tr;
    for (int k = 0; k < n * n; ++k) m[k] *= inv;
    return tr;
}

void plan_means(const cx* rho, const StructuredPlan& plan, double* mu) {
    for (int m = 0; m < plan.n_meas; ++m) {
        double acc = 0.0;
        for (int i = 0; i < plan.dim; ++i)
            acc += plan.meas_diag[m][i] * rho[i * plan.dim + i].real();
        mu[m] = acc;
    }
}

}  // namespace cqec
