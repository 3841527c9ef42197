#include "cqec/pauli.hpp"

#include <stdexcept>
#include <string>

namespace cqec {

namespace {

ComplexMatrix single(char c) {
    ComplexMatrix m(2);
    switch (c) {
        case 'I':
            m.at(0, 0) = 1.0;
            m.at(1, 1) = 1.0;
            break;
        case 'X':
            m.at(0, 1) = 1.0;
            m.at(1, 0) = 1.0;
            break;
        case 'Y':
            m.at(0, 1) = cx{0.0, -1.0};
            m.at(1, 0) = cx{0.0, 1.0};
            break;
        case 'Z':
            m.at(0, 0) = 1.0;
            m.at(1, 1) = -1.0;
            break;
        default:
            throw std::invalid_argument(std::string("invalid Pauli symbol '") + c + "'");
    }
    return m;
}

}  // namespace

ComplexMatrix realize(std::string_view pauli_label) {
    if (pauli_label.empty() || pauli_label.size() > 3)
        throw std::invalid_argument("Pauli label must have length 1..3");
    ComplexMatrix m = single(pauli_label[0]);
    for (std::size_t i = 1; i < pauli_label.size(); ++i)
        m = ComplexMatrix::kron(m, single(pauli_label[i]));
    return m;
}

}  // namespace cqec
