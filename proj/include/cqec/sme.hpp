#pragma once

#include <array>
#include <vector>

#include "cqec/complex_matrix.hpp"

namespace cqec {

// Noise and measurement channels of one stochastic master equation:
//   drho = -i[H + F, rho] dt + sum_d rate_d D[c_d] rho dt
//        + sum_m kappa_m D[A_m] rho dt + stochastic innovation terms.
struct ChannelSet {
    ComplexMatrix hamiltonian;  // dim 0 means absent

    struct Decoherence {
        ComplexMatrix op;
        double rate = 0.0;
    };
    struct Measurement {
        ComplexMatrix op;
        double rate = 0.0;        // kappa
        double efficiency = 1.0;  // eta
    };

    std::vector<Decoherence> decoherence;
    std::vector<Measurement> measurement;

    int dim() const;
    void validate(double dt) const;  // dimension/rate checks and the dt*kappa <= 0.05 guard

    // Three-qubit bit-flip model: X flips at rate gamma on each qubit,
    // continuous parity measurement of ZZI, IZZ, ZIZ at rate kappa.
    static ChannelSet bitflip(double gamma, double kappa, double eta);
};

// F = lambda_1 XII + lambda_2 IXI + lambda_3 IIX
struct FeedbackHamiltonian {
    std::array<double, 3> lambdas{0.0, 0.0, 0.0};
    ComplexMatrix realize() const;
    bool active() const { return lambdas[0] != 0.0 || lambdas[1] != 0.0 || lambdas[2] != 0.0; }
};

// dQ = <A> dt + dW / sqrt(4 kappa eta)
double measurement_record(double mean, double dw, double kappa, double eta, double dt);

// Conditional means <A_m> for every measurement channel.
std::vector<double> syndrome_means(const ChannelSet& cs, const ComplexMatrix& rho);

// One Euler–Maruyama step on the dense superoperator route (reference path).
// coeffs[m] multiplies innovation(A_m, rho): sqrt(kappa eta) dW for the real
// system, 2 kappa eta (dQ - <A>dt) for the estimator. Hermitizes and
// renormalizes afterwards.
void generic_apply(ComplexMatrix& rho, const ChannelSet& cs, const ComplexMatrix* feedback,
                   const std::vector<double>& coeffs, double dt);

struct RealStepOut {
    std::vector<double> pre_means;  // <A_m> before the step (used in dQ)
    std::vector<double> dq;
};

// Real-system step driven by Wiener increments; emits the measurement record.
RealStepOut real_step(ComplexMatrix& rho, const ChannelSet& cs, const FeedbackHamiltonian& fb,
                      const std::vector<double>& dw, double dt);

// Estimator step driven by the measurement record; returns its own pre-step means.
std::vector<double> estimator_step(ComplexMatrix& rho_e, const ChannelSet& cs,
                                   const FeedbackHamiltonian& fb, const std::vector<double>& dq,
                                   double dt);

}  // namespace cqec
