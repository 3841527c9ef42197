#include "cqec/ensemble.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>

namespace cqec {

EnsembleResult aggregate(const std::vector<TrajectoryResult>& results) {
    if (results.empty()) throw std::invalid_argument("nothing to aggregate");
    const std::size_t n_pts = results[0].times.size();
    for (const auto& r : results)
        if (r.times != results[0].times) throw std::invalid_argument("time grid mismatch");

    EnsembleResult out;
    out.times = results[0].times;
    out.mean_fidelity.resize(n_pts);
    out.std_error.resize(n_pts);
    const double n = static_cast<double>(results.size());
    for (std::size_t j = 0; j < n_pts; ++j) {
        double sum = 0.0;
        for (const auto& r : results) sum += r.fidelity[j];
        const double mean = sum / n;
        double ss = 0.0;
        for (const auto& r : results) {
            const double d = r.fidelity[j] - mean;
            ss += d * d;
        }
        out.mean_fidelity[j] = mean;
        out.std_error[j] = results.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
    }
    for (const auto& r : results) out.diag.merge(r.diag);
    out.n_completed = static_cast<int>(results.size());
    out.mean_final_fidelity = out.mean_fidelity.back();
    out.final_std_error = out.std_error.back();
    return out;
}

EnsembleResult run_ensemble(const EnsembleParams& p, const TrajectoryRunner& runner) {
    if (p.n_trajectories < 1) throw std::invalid_argument("n_trajectories must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    const TrajectoryRunner run = runner ? runner : TrajectoryRunner(run_trajectory);

    const int n = p.n_trajectories;
    std::vector<std::unique_ptr<TrajectoryResult>> slots(n);
    std::vector<std::string> errors(n);
    std::atomic<int> next{0};

    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            RunParams rp = p.base;
            rp.trajectory_index = static_cast<std::uint64_t>(i);
            rp.keep_frames = false;
            try {
                slots[i] = std::make_unique<TrajectoryResult>(run(rp));
            } catch (const std::exception& e) {
                errors[i] = e.what()[0] ? e.what() : "unknown failure";
            }
        }
    };

    int n_workers = p.n_workers > 0 ? p.n_workers
                                    : static_cast<int>(std::thread::hardware_concurrency());
    if (n_workers < 1) n_workers = 1;
    if (n_workers > n) n_workers = n;
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<TrajectoryResult> ok;
    ok.reserve(n);
    EnsembleResult out;
    for (int i = 0; i < n; ++i) {
        if (slots[i]) {
            ok.push_back(std::move(*slots[i]));
        } else {
            out.failed_indices.push_back(i);
            out.failure_messages.push_back(errors[i]);
        }
    }
    if (ok.empty()) throw std::runtime_error("all trajectories failed");
    auto failed = std::move(out.failed_indices);
    auto messages = std::move(out.failure_messages);
    out = aggregate(ok);
    out.failed_indices = std::move(failed);
    out.failure_messages = std::move(messages);
    out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return out;
}

}  // namespace cqec
