#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cqec/ensemble.hpp"
#include "cqec/trajectory.hpp"

namespace cqec {

// Flat run configuration. User-facing times are in units of 1/gamma and
// rates in units of gamma, matching the model's natural scales.
struct SimConfig {
    double gamma = 1.0;
    double kappa_over_gamma = 800.0;
    double eta = 1.0;
    double lambda0_over_kappa = 1.0;
    double epsilon = 1.05;
    double dt_gamma = 1e-5;
    double T_gamma = 1.0;
    std::uint64_t seed = 1;
    int output_stride = 100;
    long long checkpoint_stride = 0;
    std::string controller = "mbe_z";  // off | mbe_z | ahn
    double t_on_gamma = 0.0;
    std::string real_initial = "111";  // 000 | 111 | custom
    double alpha_re = 1.0, alpha_im = 0.0;
    double beta_re = 0.0, beta_im = 0.0;
    int flip_qubit = 0;  // 1..3; 0 disables the injection hook
    double flip_time_gamma = 0.0;
    int n_trajectories = 100;
    std::string kernel = "auto";  // auto | generic | scalar | avx2
    std::string sweep_parameter;  // eta | lambda0_over_kappa | kappa_over_gamma | t_on_gamma
    std::vector<double> sweep_values;

    void validate() const;       // throws with the offending field named
    RunParams to_run_params() const;
    EnsembleParams to_ensemble_params() const;
    LogicalState initial_state() const;

    // Time unit: all *_gamma keys divide by this, rates multiply.
    double unit() const { return gamma > 0.0 ? gamma : 1.0; }
};

// Parse a flat JSON object; unknown keys are rejected. Empty string -> defaults.
SimConfig parse_config(const std::string& json_text);
SimConfig load_config(const std::string& path);

// Named parameter sets of the standard experiments.
SimConfig preset_config(const std::string& name);  // fig2 | fig3a | fig4ab | fig4cf
std::vector<std::string> preset_names();

// key=value override on a parsed config (numbers, strings, or
// comma-separated lists for sweep_values).
void apply_override(SimConfig& cfg, const std::string& key, const std::string& value);

// Round-trippable echo of the effective configuration.
std::string config_to_json(const SimConfig& cfg);

}  // namespace cqec
