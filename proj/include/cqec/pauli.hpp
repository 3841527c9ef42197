#pragma once

#include <string_view>

#include "cqec/complex_matrix.hpp"

namespace cqec {

// Tensor product of single-qubit Paulis from a label over {I, X, Y, Z},
// leftmost symbol = qubit 1 = most significant bit of the basis index.
// Labels of length 1..3. Throws on an invalid symbol or length.
ComplexMatrix realize(std::string_view pauli_label);

}  // namespace cqec
