#include "cqec/superops.hpp"

#include <stdexcept>

namespace cqec {

ComplexMatrix dissipator(const ComplexMatrix& a, const ComplexMatrix& rho) {
    const ComplexMatrix ad = a.adjoint();
    const ComplexMatrix ada = ad * a;
    ComplexMatrix out = a * rho * ad;
    out -= cx{0.5} * (ada * rho + rho * ada);
    return out;
}

ComplexMatrix innovation(const ComplexMatrix& a, const ComplexMatrix& rho) {
    ComplexMatrix out = a * rho + rho * a.adjoint();
    const cx t = out.trace();
    out -= t * rho;
    return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

double expectation(const ComplexMatrix& a, const ComplexMatrix& rho) {
    if (a.dim() != rho.dim()) throw std::invalid_argument("operator/state dimension mismatch");
    cx t{};
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) t += a.at(i, k) * rho.at(k, i);
    return t.real();
}

ComplexMatrix partial_trace_keep(const ComplexMatrix& rho, int qubit) {
    if (rho.dim() != 8) throw std::invalid_argument("partial trace expects a three-qubit state");
    if (qubit < 1 || qubit > 3) throw std::invalid_argument("qubit index must be 1..3");
    const int bit = 3 - qubit;  // qubit 1 = most significant bit
    ComplexMatrix out(2);
    for (int i = 0; i < 8; ++i) {
        const int ki = (i >> bit) & 1;
        const int rest_i = i & ~(1 << bit);
        for (int kj = 0; kj < 2; ++kj) {
            const int j = rest_i | (kj << bit);
            out.at(ki, kj) += rho.at(i, j);
        }
    }
    return out;
}

double pure_state_fidelity(const StateVec& psi, const ComplexMatrix& rho) {
    if (psi.dim != rho.dim()) throw std::invalid_argument("state/rho dimension mismatch");
    cx f{};
    for (int i = 0; i < psi.dim; ++i)
        for (int j = 0; j < psi.dim; ++j) f += std::conj(psi.v[i]) * rho.at(i, j) * psi.v[j];
    return f.real();
}

}  // namespace cqec
