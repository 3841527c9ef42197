#include "cqec/sme.hpp"

#include <cmath>
#include <stdexcept>

#include "cqec/code.hpp"
#include "cqec/pauli.hpp"
#include "cqec/superops.hpp"

namespace cqec {

int ChannelSet::dim() const {
    if (!decoherence.empty()) return decoherence.front().op.dim();
    if (!measurement.empty()) return measurement.front().op.dim();
    return hamiltonian.dim();
}

void ChannelSet::validate(double dt) const {
    const int n = dim();
    if (n == 0) throw std::invalid_argument("channel set has no operators");
    if (hamiltonian.dim() != 0 && hamiltonian.dim() != n)
        throw std::invalid_argument("hamiltonian dimension mismatch");
    for (const auto& d : decoherence) {
        if (d.op.dim() != n) throw std::invalid_argument("decoherence operator dimension mismatch");
        if (!(d.rate >= 0.0)) throw std::invalid_argument("decoherence rate must be >= 0");
    }
    for (const auto& m : measurement) {
        if (m.op.dim() != n) throw std::invalid_argument("measurement operator dimension mismatch");
        if (!(m.rate >= 0.0)) throw std::invalid_argument("measurement rate must be >= 0");
        if (!(m.efficiency > 0.0 && m.efficiency <= 1.0))
            throw std::invalid_argument("measurement efficiency must be in (0, 1]");
        if (m.rate * dt > 0.05)
            throw std::invalid_argument("dt * kappa exceeds 0.05; step size too coarse");
    }
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
}

ChannelSet ChannelSet::bitflip(double gamma, double kappa, double eta) {
    ChannelSet cs;
    cs.hamiltonian = ComplexMatrix();  // zero
    for (const auto& label : flip_labels()) cs.decoherence.push_back({realize(label), gamma});
    for (const auto& label : stabilizer_labels())
        cs.measurement.push_back({realize(label), kappa, eta});
    return cs;
}

ComplexMatrix FeedbackHamiltonian::realize() const {
    ComplexMatrix f(8);
    for (int q = 0; q < 3; ++q) {
        if (lambdas[q] == 0.0) continue;
        f += cx{lambdas[q]} * cqec::realize(flip_labels()[q]);
    }
    return f;
}

double measurement_record(double mean, double dw, double kappa, double eta, double dt) {
    return mean * dt + dw / std::sqrt(4.0 * kappa * eta);
}

std::vector<double> syndrome_means(const ChannelSet& cs, const ComplexMatrix& rho) {
    std::vector<double> mu;
    mu.reserve(cs.measurement.size());
    for (const auto& m : cs.measurement) mu.push_back(expectation(m.op, rho));
    return mu;
}

void generic_apply(ComplexMatrix& rho, const ChannelSet& cs, const ComplexMatrix* feedback,
                   const std::vector<double>& coeffs, double dt) {
    const int n = rho.dim();
    ComplexMatrix delta(n);
    if (cs.hamiltonian.dim() != 0)
        delta -= cx{0.0, dt} * commutator(cs.hamiltonian, rho);
    if (feedback != nullptr && feedback->max_abs() > 0.0)
        delta -= cx{0.0, dt} * commutator(*feedback, rho);
    for (const auto& d : cs.decoherence) {
        if (d.rate == 0.0) continue;
        delta += cx{d.rate * dt} * dissipator(d.op, rho);
    }
    for (std::size_t m = 0; m < cs.measurement.size(); ++m) {
        const auto& ch = cs.measurement[m];
        if (ch.rate != 0.0) delta += cx{ch.rate * dt} * dissipator(ch.op, rho);
        if (coeffs[m] != 0.0) delta += cx{coeffs[m]} * innovation(ch.op, rho);
    }
    rho += delta;
    rho.hermitize();
    rho.normalize_trace();
}

RealStepOut real_step(ComplexMatrix& rho, const ChannelSet& cs, const FeedbackHamiltonian& fb,
                      const std::vector<double>& dw, double dt) {
    if (dw.size() != cs.measurement.size())
        throw std::invalid_argument("one Wiener increment per measurement channel required");
    RealStepOut out;
    out.pre_means = syndrome_means(cs, rho);
    std::vector<double> coeffs(cs.measurement.size());
    out.dq.resize(cs.measurement.size());
    for (std::size_t m = 0; m < cs.measurement.size(); ++m) {
        const auto& ch = cs.measurement[m];
        coeffs[m] = std::sqrt(ch.rate * ch.efficiency) * dw[m];
        out.dq[m] = measurement_record(out.pre_means[m], dw[m], ch.rate, ch.efficiency, dt);
    }
    const bool has_fb = fb.active() && rho.dim() == 8;
    const ComplexMatrix f = has_fb ? fb.realize() : ComplexMatrix();
    generic_apply(rho, cs, has_fb ? &f : nullptr, coeffs, dt);
    return out;
}

std::vector<double> estimator_step(ComplexMatrix& rho_e, const ChannelSet& cs,
                                   const FeedbackHamiltonian& fb, const std::vector<double>& dq,
                                   double dt) {
    if (dq.size() != cs.measurement.size())
        throw std::invalid_argument("one record increment per measurement channel required");
    std::vector<double> mu = syndrome_means(cs, rho_e);
    std::vector<double> coeffs(cs.measurement.size());
    for (std::size_t m = 0; m < cs.measurement.size(); ++m) {
        const auto& ch = cs.measurement[m];
        coeffs[m] = 2.0 * ch.rate * ch.efficiency * (dq[m] - mu[m] * dt);
    }
    const bool has_fb = fb.active() && rho_e.dim() == 8;
    const ComplexMatrix f = has_fb ? fb.realize() : ComplexMatrix();
    generic_apply(rho_e, cs, has_fb ? &f : nullptr, coeffs, dt);
    return mu;
}

}  // namespace cqec
