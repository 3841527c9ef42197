#include "cqec/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "cqec/noise.hpp"

namespace cqec {

double flip_probability(double gamma, double t) { return 0.5 * (1.0 - std::exp(-2.0 * gamma * t)); }

double f_dqec_analytic(double gamma, double t) {
    const double e2 = std::exp(-2.0 * gamma * t);
    return 0.25 * (2.0 + 3.0 * e2 - e2 * e2 * e2);
}

double f_one_qubit(double gamma, double t) { return 0.5 * (1.0 + std::exp(-2.0 * gamma * t)); }

double f_three_qubit_uncorrected(double gamma, double t) {
    const double f1 = f_one_qubit(gamma, t);
    return f1 * f1 * f1;
}

BaselineCurve mc_dqec_majority(const std::vector<double>& t_grid, double gamma,
                               long long n_samples, std::uint64_t seed) {
    if (n_samples < 1000) throw std::invalid_argument("mc_dqec_majority needs >= 1000 samples");
    const NoiseStream noise(seed, NoiseStream::kSamplerDomain);
    BaselineCurve curve;
    curve.t = t_grid;
    curve.value.reserve(t_grid.size());
    curve.std_error.reserve(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double p = flip_probability(gamma, t_grid[i]);
        long long successes = 0;
        for (long long s = 0; s < n_samples; ++s) {
            int flips = 0;
            for (std::uint64_t q = 0; q < 3; ++q)
                if (noise.uniform(static_cast<std::uint64_t>(s), q, i) < p) ++flips;
            if (flips <= 1) ++successes;
        }
        const double f = static_cast<double>(successes) / static_cast<double>(n_samples);
        curve.value.push_back(f);
        curve.std_error.push_back(std::sqrt(f * (1.0 - f) / static_cast<double>(n_samples)));
    }
    return curve;
}

}  // namespace cqec
