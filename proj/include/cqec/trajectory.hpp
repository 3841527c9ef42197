#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cqec/code.hpp"
#include "cqec/controllers.hpp"
#include "cqec/sme.hpp"
#include "cqec/step_kernel.hpp"

namespace cqec {

// Test hook: an instantaneous X applied to the Real state at a set time,
// bypassing the noise channel. Gives deterministic detection-latency runs.
struct FlipInjection {
    int qubit = 0;  // 1..3; 0 disables
    double time = 0.0;
};

struct RunParams {
    double gamma = 1.0;
    double kappa = 800.0;
    double eta = 1.0;
    double dt = 1e-5;
    double t_final = 1.0;
    int output_stride = 100;
    long long checkpoint_stride = 0;  // 0: pick so a run has ~100 checkpoints
    ControllerConfig controller;
    LogicalState initial_real;
    LogicalState initial_estimator;
    FlipInjection injection;
    std::uint64_t seed = 1;
    std::uint64_t trajectory_index = 0;
    KernelKind kernel = KernelKind::Auto;
    bool keep_frames = true;

    long long n_steps() const;
    void validate() const;
};

// One recorded row: observables of the state at time t plus the increments
// and drive strengths of the step taken from t. The terminal row has
// has_step = false and zero dw/dq/lambdas.
struct Frame {
    double t = 0.0;
    double f_logical = 0.0;
    std::array<double, 3> f_qubit{};
    std::array<double, 3> synd_real{};
    std::array<double, 3> synd_est{};
    std::array<double, 3> z_real{};
    std::array<double, 3> z_est{};
    std::array<double, 3> dw{};
    std::array<double, 3> dq{};
    std::array<double, 3> lambdas{};
    bool has_step = false;
};

// Health measurements of the evolving states: trace/Hermiticity error and
// smallest eigenvalue sampled at checkpoints (both systems), syndrome-mean
// range tracked at every step.
struct Diagnostics {
    double max_trace_err = 0.0;
    double max_herm_err = 0.0;
    double min_eigenvalue = 1.0;
    double syndrome_lo = 1.0;
    double syndrome_hi = -1.0;
    long long checkpoints = 0;

    void merge(const Diagnostics& other);
};

struct TrajectoryResult {
    std::vector<double> times;     // stride boundaries plus the terminal time
    std::vector<double> fidelity;  // logical fidelity on that grid
    std::vector<Frame> frames;     // empty when keep_frames is off
    Diagnostics diag;
    std::uint64_t dw_checksum = 0;
    std::array<double, 3> first_lambda_on{};  // NaN when a drive never fired
    std::array<long long, 3> lambda_on_steps{};
    long long correction_events = 0;  // rising edges of the drive vector
    double final_fidelity = 0.0;
};

TrajectoryResult run_trajectory(const RunParams& p);

}  // namespace cqec
