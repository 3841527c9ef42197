#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"

#include "cqec/code.hpp"
#include "cqec/noise.hpp"
#include "cqec/pauli.hpp"
#include "cqec/sme.hpp"
#include "cqec/step_kernel.hpp"
#include "cqec/superops.hpp"

using namespace cqec;

namespace {

// Full-rank Hermitian unit-trace state with nontrivial off-diagonals.
ComplexMatrix mixed_state() {
    StateVec a = encode({cx{0.6, 0.0}, cx{0.0, 0.8}});
    StateVec b;
    b.dim = 8;
    for (int i = 0; i < 8; ++i) b.v[i] = std::polar(1.0 / std::sqrt(8.0), 0.37 * i);
    StateVec c;
    c.dim = 8;
    c.v[5] = cx{1.0, 0.0};
    return 0.5 * projector(a) + 0.3 * projector(b) + 0.2 * projector(c);
}

ChannelSet single_qubit_set() {
    ChannelSet cs;
    cs.measurement.push_back({realize("Z"), 700.0, 1.0});
    cs.decoherence.push_back({realize("X"), 1.0});
    return cs;
}

}  // namespace

TEST_CASE("plan matches the bit-flip channel set") {
    const double gamma = 1.0, kappa = 800.0, eta = 0.85, dt = 1e-5;
    const auto cs = ChannelSet::bitflip(gamma, kappa, eta);
    const auto plan = match_structured(cs, FeedbackHamiltonian{}, dt);
    REQUIRE(plan.has_value());
    CHECK(plan->dim == 8);
    CHECK(plan->n_meas == 3);
    CHECK(plan->n_flip == 3);
    CHECK(plan->n_fb == 3);
    CHECK(plan->dt == dt);
    CHECK(plan->avx2_eligible());

    for (int m = 0; m < 3; ++m) {
        CHECK(plan->kappa[m] == kappa);
        CHECK(plan->eta[m] == eta);
        const auto op = realize(stabilizer_labels()[m]);
        for (int i = 0; i < 8; ++i) CHECK(plan->meas_diag[m][i] == op.at(i, i).real());
    }
    CHECK(plan->flip_mask[0] == 4);
    CHECK(plan->flip_mask[1] == 2);
    CHECK(plan->flip_mask[2] == 1);
    CHECK(plan->fb_mask[0] == 4);
    CHECK(plan->fb_mask[1] == 2);
    CHECK(plan->fb_mask[2] == 1);
    for (int q = 0; q < 3; ++q) CHECK(plan->gamma_dt[q] == gamma * dt);

    // Diagonal entries see no measurement drift; the (0,1) pair disagrees on
    // IZZ and ZIZ only.
    for (int i = 0; i < 8; ++i)
        CHECK(plan->drift[i * 8 + i] == doctest::Approx(1.0 - 3.0 * gamma * dt).epsilon(1e-15));
    CHECK(plan->drift[0 * 8 + 1] ==
          doctest::Approx(1.0 - 3.0 * gamma * dt - 4.0 * kappa * dt).epsilon(1e-15));
    CHECK(plan->drift[0 * 8 + 7] == doctest::Approx(1.0 - 3.0 * gamma * dt).epsilon(1e-15));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            CHECK(plan->drift_dup[i * 16 + 2 * j] == plan->drift[i * 8 + j]);
            CHECK(plan->drift_dup[i * 16 + 2 * j + 1] == plan->drift[i * 8 + j]);
        }
}

TEST_CASE("plan matcher rejects models outside the structured form") {
    const double dt = 1e-5;
    auto with_hamiltonian = ChannelSet::bitflip(1.0, 800.0, 1.0);
    with_hamiltonian.hamiltonian = realize("ZII");
    CHECK(!match_structured(with_hamiltonian, FeedbackHamiltonian{}, dt).has_value());

    auto off_diag_meas = ChannelSet::bitflip(1.0, 800.0, 1.0);
    off_diag_meas.measurement[0].op = realize("XII");
    CHECK(!match_structured(off_diag_meas, FeedbackHamiltonian{}, dt).has_value());

    auto diagonal_flip = ChannelSet::bitflip(1.0, 800.0, 1.0);
    diagonal_flip.decoherence[0].op = realize("ZII");
    CHECK(!match_structured(diagonal_flip, FeedbackHamiltonian{}, dt).has_value());

    auto identity_flip = ChannelSet::bitflip(1.0, 800.0, 1.0);
    identity_flip.decoherence[0].op = ComplexMatrix::identity(8);
    CHECK(!match_structured(identity_flip, FeedbackHamiltonian{}, dt).has_value());

    // A single-qubit Z-measurement/X-flip model is structured but stays off
    // the 8-dimensional vector path.
    const auto small = match_structured(single_qubit_set(), FeedbackHamiltonian{}, dt);
    REQUIRE(small.has_value());
    CHECK(small->dim == 2);
    CHECK(small->n_fb == 0);
    CHECK(!small->avx2_eligible());
}

TEST_CASE("scalar kernel reproduces the dense reference step") {
    const double kappa = 800.0, eta = 0.9, dt = 1e-5;
    const auto cs = ChannelSet::bitflip(1.0, kappa, eta);
    const FeedbackHamiltonian fb{{240.0, 0.0, 120.0}};
    const auto plan = match_structured(cs, fb, dt);
    REQUIRE(plan.has_value());

    const ComplexMatrix rho = mixed_state();
    double mu[4] = {};
    plan_means(rho.data(), *plan, mu);
    const auto mu_ref = syndrome_means(cs, rho);
    for (int m = 0; m < 3; ++m) CHECK(mu[m] == doctest::Approx(mu_ref[m]).epsilon(1e-14));

    const std::vector<double> coeffs{0.013, -0.009, 0.004};
    ComplexMatrix dense = rho;
    const ComplexMatrix fbm = fb.realize();
    generic_apply(dense, cs, &fbm, coeffs, dt);

    ComplexMatrix out(8);
    const double lam_dt[3] = {fb.lambdas[0] * dt, fb.lambdas[1] * dt, fb.lambdas[2] * dt};
    const double tr = sme_step_scalar(rho.data(), out.data(), *plan, lam_dt, coeffs.data(), mu);
    CHECK(out.max_abs_diff(dense) <= 1e-13);
    // Every term of the update is traceless, so the pre-normalization trace
    // is the input trace.
    CHECK(tr == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vector kernel agrees with the scalar kernel") {
    if (!avx2_available()) return;
    const double kappa = 800.0, eta = 0.9, dt = 1e-5;
    const auto cs = ChannelSet::bitflip(1.0, kappa, eta);
    const FeedbackHamiltonian fb{{240.0, 360.0, 120.0}};
    const auto plan = match_structured(cs, fb, dt);
    REQUIRE(plan.has_value());
    const StepFn vec = select_step_fn(KernelKind::Avx2, *plan);
    CHECK(vec != &sme_step_scalar);

    const ComplexMatrix rho = mixed_state();
    double mu[4] = {};
    plan_means(rho.data(), *plan, mu);
    const double s[3] = {0.013, -0.009, 0.004};
    const double lam_dt[3] = {fb.lambdas[0] * dt, fb.lambdas[1] * dt, fb.lambdas[2] * dt};

    ComplexMatrix a(8), b(8);
    const double tr_s = sme_step_scalar(rho.data(), a.data(), *plan, lam_dt, s, mu);
    const double tr_v = vec(rho.data(), b.data(), *plan, lam_dt, s, mu);
    CHECK(a.max_abs_diff(b) <= 1e-13);
    CHECK(tr_s == doctest::Approx(tr_v).epsilon(1e-12));
}

TEST_CASE("kernel selection honors explicit requests") {
    const auto plan = match_structured(ChannelSet::bitflip(1.0, 800.0, 1.0),
                                       FeedbackHamiltonian{}, 1e-5);
    REQUIRE(plan.has_value());
    CHECK(select_step_fn(KernelKind::Scalar, *plan) == &sme_step_scalar);
    CHECK_THROWS_AS(select_step_fn(KernelKind::Generic, *plan), std::invalid_argument);
    if (avx2_available()) {
        CHECK(select_step_fn(KernelKind::Auto, *plan) == select_step_fn(KernelKind::Avx2, *plan));
        CHECK(select_step_fn(KernelKind::Auto, *plan) != &sme_step_scalar);
    } else {
        CHECK(select_step_fn(KernelKind::Auto, *plan) == &sme_step_scalar);
        CHECK_THROWS_AS(select_step_fn(KernelKind::Avx2, *plan), std::runtime_error);
    }

    // The explicit vector request fails on an ineligible plan even when the
    // host supports it.
    const auto small = match_structured(single_qubit_set(), FeedbackHamiltonian{}, 1e-5);
    REQUIRE(small.has_value());
    CHECK(select_step_fn(KernelKind::Auto, *small) == &sme_step_scalar);
    CHECK_THROWS_AS(select_step_fn(KernelKind::Avx2, *small), std::runtime_error);

    CHECK(parse_kernel_kind("auto") == KernelKind::Auto);
    CHECK(parse_kernel_kind("generic") == KernelKind::Generic);
    CHECK(parse_kernel_kind("scalar") == KernelKind::Scalar);
    CHECK(parse_kernel_kind("avx2") == KernelKind::Avx2);
    CHECK_THROWS_AS(parse_kernel_kind("sse9"), std::invalid_argument);
    CHECK(kernel_kind_name(KernelKind::Auto) == std::string("auto"));
    CHECK(kernel_kind_name(KernelKind::Generic) == std::string("generic"));
    CHECK(kernel_kind_name(KernelKind::Scalar) == std::string("scalar"));
    CHECK(kernel_kind_name(KernelKind::Avx2) == std::string("avx2"));
}

TEST_CASE("two hundred noisy steps stay on the dense reference trajectory") {
    const double kappa = 800.0, eta = 1.0, dt = 1e-5;
    const auto cs = ChannelSet::bitflip(1.0, kappa, eta);
    const FeedbackHamiltonian fb{{600.0, 0.0, 0.0}};
    const auto plan = match_structured(cs, fb, dt);
    REQUIRE(plan.has_value());
    const ComplexMatrix fbm = fb.realize();
    const double lam_dt[3] = {fb.lambdas[0] * dt, fb.lambdas[1] * dt, fb.lambdas[2] * dt};
    const bool have_vec = avx2_available();
    const StepFn vec = have_vec ? select_step_fn(KernelKind::Avx2, *plan) : nullptr;

    ComplexMatrix dense = projector(encode({cx{0.6, 0.0}, cx{0.8, 0.0}}));
    ComplexMatrix sc = dense, sc_next(8);
    ComplexMatrix vc = dense, vc_next(8);

    const NoiseStream noise(11, NoiseStream::kTrajectoryDomain);
    const double sk = std::sqrt(kappa * eta);
    for (int k = 0; k < 200; ++k) {
        double s[3], mu[4];
        for (int m = 0; m < 3; ++m)
            s[m] = sk * noise.wiener(0, static_cast<std::uint64_t>(m),
                                     static_cast<std::uint64_t>(k), dt);
        generic_apply(dense, cs, &fbm, {s[0], s[1], s[2]}, dt);
        plan_means(sc.data(), *plan, mu);
        sme_step_scalar(sc.data(), sc_next.data(), *plan, lam_dt, s, mu);
        std::swap(sc, sc_next);
        if (have_vec) {
            plan_means(vc.data(), *plan, mu);
            vec(vc.data(), vc_next.data(), *plan, lam_dt, s, mu);
            std::swap(vc, vc_next);
        }
    }
    CHECK(sc.max_abs_diff(dense) <= 1e-10);
    if (have_vec) CHECK(vc.max_abs_diff(sc) <= 1e-11);
}

TEST_CASE("step tail restores hermiticity and reports the raw trace") {
    cx m[4] = {cx{0.7, 0.001}, cx{0.2, 0.1}, cx{0.1, -0.05}, cx{0.3, -0.001}};
    const double tr = hermitize_normalize(m, 2);
    CHECK(tr == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m[0] == cx{0.7, 0.0});
    CHECK(m[3] == cx{0.3, 0.0});
    CHECK(m[1].real() == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(m[1].imag() == doctest::Approx(0.075).epsilon(1e-15));
    CHECK(m[2] == std::conj(m[1]));

    cx negative[1] = {cx{-0.5, 0.0}};
    CHECK_THROWS_AS(hermitize_normalize(negative, 1), std::runtime_error);
    cx invalid[1] = {cx{std::nan(""), 0.0}};
    CHECK_THROWS_AS(hermitize_normalize(invalid, 1), std::runtime_error);
}
