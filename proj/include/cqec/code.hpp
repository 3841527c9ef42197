#pragma once

#include <array>
#include <string>

#include "cqec/complex_matrix.hpp"

namespace cqec {

// Logical qubit amplitudes; |alpha|^2 + |beta|^2 must be 1.
struct LogicalState {
    cx alpha{1.0, 0.0};
    cx beta{0.0, 0.0};
    void validate() const;  // throws when not normalized
};

// Stabilizer generators (plus the redundant third parity) and flip operators
// of the three-qubit bit-flip code, as Pauli labels.
const std::array<std::string, 3>& stabilizer_labels();  // ZZI, IZZ, ZIZ
const std::array<std::string, 3>& flip_labels();        // XII, IXI, IIX

// alpha|000> + beta|111>
StateVec encode(const LogicalState& s);

// <psi0| rho |psi0> against the encoded initial state.
double codespace_fidelity(const StateVec& initial, const ComplexMatrix& rho);

// Fidelity of physical qubit q against a reference single-qubit pure state:
// <ref| tr_others(rho) |ref>.
double per_qubit_fidelity(const std::array<cx, 2>& ref, const ComplexMatrix& rho, int qubit);

// |<Z_q> - z0| / |z0|; throws when z0 == 0. Invariant under a global sign
// flip of the Z convention (both arguments negate).
double z_deviation(const ComplexMatrix& rho, int qubit, double z0);

// diag(+-1) sign of Z_q at basis index i (qubit 1 = most significant bit).
inline int z_sign(int qubit, int basis_index) {
    return ((basis_index >> (3 - qubit)) & 1) ? -1 : 1;
}

enum class Correction { None, X1, X2, X3 };

// Discrete decode of the (ZZI, IZZ) syndrome pair, values in {+1, -1}.
Correction dqec_syndrome_decode(int m1, int m2);

const char* correction_label(Correction c);  // "I", "XII", "IXI", "IIX"

}  // namespace cqec
