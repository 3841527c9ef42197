#include "cqec/code.hpp"

#include <cmath>
#include <stdexcept>

#include "cqec/superops.hpp"

namespace cqec {

void LogicalState::validate() const {
    const double n = std::norm(alpha) + std::norm(beta);
    if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument("logical state is not normalized");
}

const std::array<std::string, 3>& stabilizer_labels() {
    static const std::array<std::string, 3> labels{"ZZI", "IZZ", "ZIZ"};
    return labels;
}

const std::array<std::string, 3>& flip_labels() {
    static const std::array<std::string, 3> labels{"XII", "IXI", "IIX"};
    return labels;
}

StateVec encode(const LogicalState& s) {
    s.validate();
    StateVec psi;
    psi.dim = 8;
    psi.v[0] = s.alpha;
    psi.v[7] = s.beta;
    return psi;
}

double codespace_fidelity(const StateVec& initial, const ComplexMatrix& rho) {
    return pure_state_fidelity(initial, rho);
}

double per_qubit_fidelity(const std::array<cx, 2>& ref, const ComplexMatrix& rho, int qubit) {
    const ComplexMatrix r = partial_trace_keep(rho, qubit);
    cx f{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) f += std::conj(ref[i]) * r.at(i, j) * ref[j];
    return f.real();
}

double z_deviation(const ComplexMatrix& rho, int qubit, double z0) {
    if (z0 == 0.0) throw std::invalid_argument("z_deviation reference must be nonzero");
    if (rho.dim() != 8) throw std::invalid_argument("z_deviation expects a three-qubit state");
    double z = 0.0;
    for (int i = 0; i < 8; ++i) z += z_sign(qubit, i) * rho.at(i, i).real();
    return std::abs(z - z0) / std::abs(z0);
}

Correction dqec_syndrome_decode(int m1, int m2) {
    const bool ok1 = (m1 == 1 || m1 == -1);
    const bool ok2 = (m2 == 1 || m2 == -1);
    if (!ok1 || !ok2) throw std::invalid_argument("syndrome values must be +1 or -1");
    if (m1 == -1 && m2 == 1) return Correction::X1;
    if (m1 == -1 && m2 == -1) return Correction::X2;
    if (m1 == 1 && m2 == -1) return Correction::X3;
    return Correction::None;
}

const char* correction_label(Correction c) {
    switch (c) {
        case Correction::X1: return "XII";
        case Correction::X2: return "IXI";
        case Correction::X3: return "IIX";
        default: return "I";
    }
}

}  // namespace cqec
