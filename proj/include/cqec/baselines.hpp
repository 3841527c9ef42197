#pragma once

#include <cstdint>
#include <vector>

namespace cqec {

// Closed-form reference curves for three physical qubits under independent
// rate-gamma flip channels.

// Net flip parity probability p(t) = (1 - e^{-2 gamma t}) / 2.
double flip_probability(double gamma, double t);

// Discrete majority-vote correction: (2 + 3 e^{-2 gamma t} - e^{-6 gamma t}) / 4,
// algebraically equal to 1 - 3p^2 + 2p^3.
double f_dqec_analytic(double gamma, double t);

// Single uncorrected qubit: (1 + e^{-2 gamma t}) / 2.
double f_one_qubit(double gamma, double t);

// Three uncorrected qubits: f_one_qubit cubed.
double f_three_qubit_uncorrected(double gamma, double t);

struct BaselineCurve {
    std::vector<double> t;
    std::vector<double> value;
    std::vector<double> std_error;  // empty for analytic curves
};

// Monte-Carlo oracle for f_dqec_analytic: at each grid time, sample three
// independent net flip parities with probability p(t), majority-vote
// correct, and report the success frequency with its binomial stderr.
BaselineCurve mc_dqec_majority(const std::vector<double>& t_grid, double gamma,
                               long long n_samples, std::uint64_t seed);

}  // namespace cqec
