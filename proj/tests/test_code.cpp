#include <cmath>
#include <stdexcept>

#include "cqec/code.hpp"
#include "cqec/pauli.hpp"
#include "cqec/superops.hpp"
#include "doctest.h"

using namespace cqec;

TEST_CASE("encode places amplitudes on the codewords") {
    const LogicalState s{cx{0.6, 0.0}, cx{0.0, 0.8}};
    s.validate();
    const StateVec psi = encode(s);
    CHECK(psi.dim == 8);
    CHECK(psi.v[0] == cx{0.6, 0.0});
    CHECK(psi.v[7] == cx{0.0, 0.8});
    for (int i = 1; i < 7; ++i) CHECK(psi.v[i] == cx{0.0, 0.0});

    const LogicalState unnormalized{cx{1.0, 0.0}, cx{0.5, 0.0}};
    CHECK_THROWS_AS(unnormalized.validate(), std::invalid_argument);
}

TEST_CASE("codewords are +1 eigenstates of every stabilizer") {
    for (const LogicalState& s :
         {LogicalState{cx{1.0, 0.0}, cx{0.0, 0.0}}, LogicalState{cx{0.0, 0.0}, cx{1.0, 0.0}},
          LogicalState{cx{0.6, 0.0}, cx{0.0, 0.8}}}) {
        const ComplexMatrix rho = projector(encode(s));
        for (const auto& label : stabilizer_labels())
            CHECK(expectation(realize(label), rho) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("codespace fidelity tracks the encoded reference") {
    const LogicalState s{cx{0.6, 0.0}, cx{0.8, 0.0}};
    const StateVec psi = encode(s);
    CHECK(codespace_fidelity(psi, projector(psi)) == doctest::Approx(1.0).epsilon(1e-14));

    // a flip of qubit 2 sends the state out of the codespace entirely
    const ComplexMatrix x2 = realize("IXI");
    const ComplexMatrix flipped = x2 * projector(psi) * x2;
    CHECK(codespace_fidelity(psi, flipped) == doctest::Approx(0.0).epsilon(1e-14));

    // the orthogonal logical state has zero overlap
    const StateVec other = encode(LogicalState{cx{0.8, 0.0}, cx{-0.6, 0.0}});
    CHECK(codespace_fidelity(psi, projector(other)) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("per-qubit fidelity sees exactly the flipped qubit") {
    const LogicalState s{cx{0.0, 0.0}, cx{1.0, 0.0}};  // |111>
    const std::array<cx, 2> ref{s.alpha, s.beta};
    const ComplexMatrix rho = projector(encode(s));
    for (int q = 1; q <= 3; ++q)
        CHECK(per_qubit_fidelity(ref, rho, q) == doctest::Approx(1.0).epsilon(1e-14));

    const ComplexMatrix x2 = realize("IXI");
    const ComplexMatrix flipped = x2 * rho * x2;
    CHECK(per_qubit_fidelity(ref, flipped, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(per_qubit_fidelity(ref, flipped, 2) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(per_qubit_fidelity(ref, flipped, 3) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("z sign convention: qubit 1 is the high bit") {
    CHECK(z_sign(1, 0b000) == 1);
    CHECK(z_sign(1, 0b100) == -1);
    CHECK(z_sign(2, 0b010) == -1);
    CHECK(z_sign(3, 0b001) == -1);
    CHECK(z_sign(3, 0b110) == 1);
}

TEST_CASE("z deviation is relative to the reference") {
    const ComplexMatrix rho = projector(encode(LogicalState{cx{1.0, 0.0}, cx{0.0, 0.0}}));
    CHECK(z_deviation(rho, 1, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    const ComplexMatrix x1 = realize("XII");
    const ComplexMatrix flipped = x1 * rho * x1;
    CHECK(z_deviation(flipped, 1, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(z_deviation(flipped, 2, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(z_deviation(rho, 1, 0.0), std::invalid_argument);
}

TEST_CASE("syndrome pair decodes to the flipped qubit") {
    CHECK(dqec_syndrome_decode(-1, 1) == Correction::X1);
    CHECK(dqec_syndrome_decode(-1, -1) == Correction::X2);
    CHECK(dqec_syndrome_decode(1, -1) == Correction::X3);
    CHECK(dqec_syndrome_decode(1, 1) == Correction::None);
    CHECK_THROWS_AS(dqec_syndrome_decode(0, 1), std::invalid_argument);
}

TEST_CASE("decode matches measured syndromes of every single flip") {
    const LogicalState s{cx{0.6, 0.0}, cx{0.0, 0.8}};
    const ComplexMatrix rho = projector(encode(s));
    const ComplexMatrix zzi = realize("ZZI"), izz = realize("IZZ");
    for (int q = 0; q < 3; ++q) {
        const ComplexMatrix x = realize(flip_labels()[q]);
        const ComplexMatrix flipped = x * rho * x;
        const int m1 = expectation(zzi, flipped) > 0 ? 1 : -1;
        const int m2 = expectation(izz, flipped) > 0 ? 1 : -1;
        const Correction c = dqec_syndrome_decode(m1, m2);
        CHECK(static_cast<int>(c) == q + 1);
        CHECK(correction_label(c) == flip_labels()[q]);
    }
}
