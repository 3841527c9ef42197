#pragma once

#include "cqec/complex_matrix.hpp"

namespace cqec {

// D[A]rho = A rho A^dag - (A^dag A rho + rho A^dag A) / 2
ComplexMatrix dissipator(const ComplexMatrix& a, const ComplexMatrix& rho);

// H[A]rho = A rho + rho A^dag - rho * tr(A rho + rho A^dag)
ComplexMatrix innovation(const ComplexMatrix& a, const ComplexMatrix& rho);

// [A, B]
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Re tr(A rho)
double expectation(const ComplexMatrix& a, const ComplexMatrix& rho);

// Reduced 2x2 state of one qubit (qubit in 1..3) of a three-qubit rho.
ComplexMatrix partial_trace_keep(const ComplexMatrix& rho, int qubit);

// <psi| rho |psi>
double pure_state_fidelity(const StateVec& psi, const ComplexMatrix& rho);

}  // namespace cqec
