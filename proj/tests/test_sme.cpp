#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cqec/code.hpp"
#include "cqec/noise.hpp"
#include "cqec/pauli.hpp"
#include "cqec/sme.hpp"
#include "cqec/superops.hpp"

using namespace cqec;

TEST_CASE("bit-flip channel set shape") {
    const auto cs = ChannelSet::bitflip(1.0, 800.0, 1.0);
    CHECK(cs.dim() == 8);
    REQUIRE(cs.decoherence.size() == 3);
    REQUIRE(cs.measurement.size() == 3);
    for (int q = 0; q < 3; ++q) {
        CHECK(cs.decoherence[q].op.max_abs_diff(realize(flip_labels()[q])) == 0.0);
        CHECK(cs.decoherence[q].rate == 1.0);
        CHECK(cs.measurement[q].op.max_abs_diff(realize(stabilizer_labels()[q])) == 0.0);
        CHECK(cs.measurement[q].rate == 800.0);
        CHECK(cs.measurement[q].efficiency == 1.0);
    }
    CHECK_NOTHROW(cs.validate(1e-5));
}

TEST_CASE("channel set validation rejects bad inputs") {
    const ChannelSet empty;
    CHECK_THROWS_AS(empty.validate(1e-5), std::invalid_argument);

    auto bad_h = ChannelSet::bitflip(1.0, 800.0, 1.0);
    bad_h.hamiltonian = realize("Z");
    CHECK_THROWS_AS(bad_h.validate(1e-5), std::invalid_argument);

    auto bad_rate = ChannelSet::bitflip(1.0, 800.0, 1.0);
    bad_rate.decoherence[1].rate = -1.0;
    CHECK_THROWS_AS(bad_rate.validate(1e-5), std::invalid_argument);

    auto bad_eta = ChannelSet::bitflip(1.0, 800.0, 1.0);
    bad_eta.measurement[0].efficiency = 0.0;
    CHECK_THROWS_AS(bad_eta.validate(1e-5), std::invalid_argument);
    bad_eta.measurement[0].efficiency = 1.5;
    CHECK_THROWS_AS(bad_eta.validate(1e-5), std::invalid_argument);

    const auto cs = ChannelSet::bitflip(1.0, 800.0, 1.0);
    CHECK_THROWS_AS(cs.validate(1e-4), std::invalid_argument);  // dt * kappa = 0.08
    CHECK_THROWS_AS(cs.validate(0.0), std::invalid_argument);
    CHECK_THROWS_AS(cs.validate(-1e-5), std::invalid_argument);
}

TEST_CASE("measurement record is mean dt plus scaled noise") {
    const double dq = measurement_record(0.75, 0.002, 800.0, 0.9, 1e-5);
    CHECK(dq == 0.75 * 1e-5 + 0.002 / std::sqrt(4.0 * 800.0 * 0.9));
    CHECK(measurement_record(0.0, 0.0, 800.0, 1.0, 1e-5) == 0.0);
}

TEST_CASE("one deterministic step from the all-zero state") {
    const double gamma = 1.0, dt = 1e-5;
    const auto cs = ChannelSet::bitflip(gamma, 800.0, 1.0);
    StateVec zero;
    zero.dim = 8;
    zero.v[0] = cx{1.0, 0.0};
    ComplexMatrix rho = projector(zero);
    const auto out = real_step(rho, cs, FeedbackHamiltonian{}, {0.0, 0.0, 0.0}, dt);
    for (int m = 0; m < 3; ++m) {
        CHECK(out.pre_means[m] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(out.dq[m] == doctest::Approx(dt).epsilon(1e-14));
    }
    // Each qubit flip lowers <Z_1> only via the first channel; each stabilizer
    // is broken by exactly two of the three flips.
    CHECK(expectation(realize("ZII"), rho) == doctest::Approx(1.0 - 2.0 * gamma * dt).epsilon(1e-12));
    const auto mu = syndrome_means(cs, rho);
    for (int m = 0; m < 3; ++m)
        CHECK(mu[m] == doctest::Approx(1.0 - 4.0 * gamma * dt).epsilon(1e-12));
}

TEST_CASE("codespace states are fixed points without flips") {
    const auto cs = ChannelSet::bitflip(0.0, 800.0, 1.0);
    const ComplexMatrix rho0 = projector(encode({cx{0.6, 0.0}, cx{0.0, 0.8}}));
    ComplexMatrix rho = rho0;
    // Codewords are +1 eigenstates of every measured parity, so both the
    // dissipator and the innovation vanish regardless of the noise draw.
    real_step(rho, cs, FeedbackHamiltonian{}, {0.03, -0.02, 0.01}, 1e-5);
    CHECK(rho.max_abs_diff(rho0) <= 1e-15);

    ComplexMatrix rho_e = rho0;
    estimator_step(rho_e, cs, FeedbackHamiltonian{}, {1e-3, -2e-3, 5e-4}, 1e-5);
    CHECK(rho_e.max_abs_diff(rho0) <= 1e-15);
}

TEST_CASE("estimator fed the true record stays slaved to the real state") {
    const double gamma = 1.0, kappa = 800.0, eta = 0.6, dt = 1e-5;
    const auto cs = ChannelSet::bitflip(gamma, kappa, eta);
    const FeedbackHamiltonian fb{{500.0, 0.0, 0.0}};
    ComplexMatrix rho_r = projector(encode({cx{0.6, 0.0}, cx{0.8, 0.0}}));
    ComplexMatrix rho_e = rho_r;
    const NoiseStream noise(21, NoiseStream::kTrajectoryDomain);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        std::vector<double> dw(3);
        for (int m = 0; m < 3; ++m)
            dw[m] = noise.wiener(0, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k),
                                 dt);
        const auto out = real_step(rho_r, cs, fb, dw, dt);
        estimator_step(rho_e, cs, fb, out.dq, dt);
        worst = std::max(worst, rho_e.max_abs_diff(rho_r));
    }
    CHECK(worst <= 1e-10);
    CHECK(rho_r.trace().real() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("step guards") {
    const auto cs = ChannelSet::bitflip(1.0, 800.0, 1.0);
    ComplexMatrix rho = projector(encode({cx{1.0, 0.0}, cx{0.0, 0.0}}));
    CHECK_THROWS_AS(real_step(rho, cs, FeedbackHamiltonian{}, {0.0, 0.0}, 1e-5),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimator_step(rho, cs, FeedbackHamiltonian{}, {0.0}, 1e-5),
                    std::invalid_argument);
}

TEST_CASE("feedback is ignored outside the three-qubit model") {
    ChannelSet cs;
    cs.measurement.push_back({realize("Z"), 700.0, 1.0});
    cs.decoherence.push_back({realize("X"), 1.0});
    StateVec up;
    up.dim = 2;
    up.v[0] = cx{1.0, 0.0};
    ComplexMatrix with_fb = projector(up);
    ComplexMatrix without_fb = with_fb;
    const FeedbackHamiltonian fb{{500.0, 0.0, 0.0}};
    real_step(with_fb, cs, fb, {1e-3}, 1e-5);
    real_step(without_fb, cs, FeedbackHamiltonian{}, {1e-3}, 1e-5);
    CHECK(with_fb.max_abs_diff(without_fb) == 0.0);
}
