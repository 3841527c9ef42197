#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cqec/trajectory.hpp"

namespace cqec {

struct EnsembleParams {
    RunParams base;  // trajectory_index and keep_frames are managed per run
    int n_trajectories = 100;
    int n_workers = 0;  // 0: hardware concurrency
};

struct EnsembleResult {
    std::vector<double> times;
    std::vector<double> mean_fidelity;
    std::vector<double> std_error;  // sample std / sqrt(N)
    Diagnostics diag;               // merged over trajectories
    std::vector<long long> failed_indices;
    std::vector<std::string> failure_messages;
    int n_completed = 0;
    double mean_final_fidelity = 0.0;
    double final_std_error = 0.0;
    double wall_ms = 0.0;
};

// Pointwise mean and stderr over trajectories sharing one time grid.
// Throws on a grid mismatch.
EnsembleResult aggregate(const std::vector<TrajectoryResult>& results);

using TrajectoryRunner = std::function<TrajectoryResult(const RunParams&)>;

// Runs n_trajectories independent trajectories (noise addressed by
// trajectory index) and aggregates them in index order, so the result is
// bit-identical for any worker count. A failed trajectory is excluded and
// reported, not fatal. The runner seam defaults to run_trajectory.
EnsembleResult run_ensemble(const EnsembleParams& p, const TrajectoryRunner& runner = {});

}  // namespace cqec
