#include "cqec/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#if defined(__SSE2__)
#include <immintrin.h>
#endif

#include "cqec/noise.hpp"
#include "cqec/pauli.hpp"
#include "cqec/superops.hpp"

namespace cqec {

namespace {

// Off-sector cells decay through the subnormal range once a drive has acted,
// and microcoded subnormal arithmetic then dominates the step cost (~10x).
// Flush to zero for the duration of a trajectory; the flushed magnitudes sit
// hundreds of orders below anything the model resolves.
struct FlushSubnormals {
#if defined(__SSE2__)
    const unsigned saved = _mm_getcsr();
    FlushSubnormals() { _mm_setcsr(saved | 0x8040u); }  // FTZ | DAZ
    ~FlushSubnormals() { _mm_setcsr(saved); }
#else
    FlushSubnormals() {}
#endif
};

double z_mean(const ComplexMatrix& rho, int qubit) {
    double acc = 0.0;
    for (int i = 0; i < 8; ++i) acc += z_sign(qubit, i) * rho.at(i, i).real();
    return acc;
}

void checkpoint(Diagnostics& d, const ComplexMatrix& rho) {
    const cx tr = rho.trace();
    d.max_trace_err =
        std::max(d.max_trace_err, std::abs(tr.real() - 1.0) + std::abs(tr.imag()));
    double herm = 0.0;
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = 0; j < rho.dim(); ++j)
            herm = std::max(herm, std::abs(rho.at(i, j) - std::conj(rho.at(j, i))));
    d.max_herm_err = std::max(d.max_herm_err, herm);
    d.min_eigenvalue = std::min(d.min_eigenvalue, hermitian_min_eigenvalue(rho));
}

}  // namespace

long long RunParams::n_steps() const { return std::llround(t_final / dt); }

void RunParams::validate() const {
    if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    if (kappa <= 0.0) throw std::invalid_argument("kappa must be > 0");
    if (eta <= 0.0 || eta > 1.0) throw std::invalid_argument("eta must be in (0, 1]");
    if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
    if (dt * kappa > 0.05) throw std::invalid_argument("dt * kappa exceeds the 0.05 guard");
    if (t_final <= 0.0) throw std::invalid_argument("t_final must be > 0");
    if (output_stride < 1) throw std::invalid_argument("output_stride must be >= 1");
    if (checkpoint_stride < 0) throw std::invalid_argument("checkpoint_stride must be >= 0");
    const long long n = n_steps();
    if (n < 1 || std::abs(n * dt - t_final) > dt)
        throw std::invalid_argument("t_final must be a whole number of steps");
    initial_real.validate();
    initial_estimator.validate();
    if (injection.qubit < 0 || injection.qubit > 3)
        throw std::invalid_argument("injection qubit must be 1..3 (0 disables)");
    if (injection.qubit != 0 && (injection.time < 0.0 || injection.time > t_final))
        throw std::invalid_argument("injection time outside the run horizon");
    if (controller.lambda0 < 0.0) throw std::invalid_argument("lambda0 must be >= 0");
    if (controller.epsilon <= 0.0) throw std::invalid_argument("epsilon must be > 0");
    if (controller.t_on < 0.0) throw std::invalid_argument("t_on must be >= 0");
}

void Diagnostics::merge(const Diagnostics& other) {
    max_trace_err = std::max(max_trace_err, other.max_trace_err);
    max_herm_err = std::max(max_herm_err, other.max_herm_err);
    min_eigenvalue = std::min(min_eigenvalue, other.min_eigenvalue);
    syndrome_lo = std::min(syndrome_lo, other.syndrome_lo);
    syndrome_hi = std::max(syndrome_hi, other.syndrome_hi);
    checkpoints += other.checkpoints;
}

TrajectoryResult run_trajectory(const RunParams& p) {
    p.validate();
    const FlushSubnormals ftz;
    const ChannelSet cs = ChannelSet::bitflip(p.gamma, p.kappa, p.eta);
    cs.validate(p.dt);

    const long long n = p.n_steps();
    const long long cp_stride =
        p.checkpoint_stride > 0 ? p.checkpoint_stride : std::max<long long>(1, n / 100);
    const int n_meas = static_cast<int>(cs.measurement.size());

    const StateVec psi_ref = encode(p.initial_real);
    const std::array<cx, 2> qubit_ref{p.initial_real.alpha, p.initial_real.beta};
    ComplexMatrix rho_bufs[4] = {projector(psi_ref), ComplexMatrix::zero(8),
                                 projector(encode(p.initial_estimator)), ComplexMatrix::zero(8)};
    ComplexMatrix* rho_r = &rho_bufs[0];
    ComplexMatrix* rho_r_next = &rho_bufs[1];
    ComplexMatrix* rho_e = &rho_bufs[2];
    ComplexMatrix* rho_e_next = &rho_bufs[3];
    const long long inject_step =
        p.injection.qubit != 0 ? std::llround(p.injection.time / p.dt) : -1;

    std::optional<StructuredPlan> plan;
    StepFn step_fn = nullptr;
    if (p.kernel != KernelKind::Generic) {
        plan = match_structured(cs, FeedbackHamiltonian{}, p.dt);
        if (plan)
            step_fn = select_step_fn(p.kernel, *plan);
        else if (p.kernel != KernelKind::Auto)
            throw std::runtime_error("channel set not eligible for fused kernels");
    }

    const NoiseStream noise(p.seed, NoiseStream::kTrajectoryDomain);
    Fnv1a checksum;

    ControllerState ctrl;
    for (int q = 0; q < 3; ++q) ctrl.z0[q] = z_mean(*rho_e, q + 1);

    std::array<double, 4> sqrt_keta{};
    for (int m = 0; m < n_meas; ++m)
        sqrt_keta[m] = std::sqrt(cs.measurement[m].rate * cs.measurement[m].efficiency);

    TrajectoryResult out;
    out.diag.syndrome_lo = std::numeric_limits<double>::infinity();
    out.diag.syndrome_hi = -std::numeric_limits<double>::infinity();
    out.first_lambda_on = {std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::quiet_NaN()};
    const long long n_grid = n / p.output_stride + 2;
    out.times.reserve(n_grid);
    out.fidelity.reserve(n_grid);
    if (p.keep_frames) out.frames.reserve(n_grid);

    std::array<double, 3> lam{0.0, 0.0, 0.0};
    bool lam_active = false;
    ComplexMatrix fb_mat;  // generic route cache; rebuilt when lam changes
    std::array<double, 3> fb_mat_lam{0.0, 0.0, 0.0};
    std::vector<double> coeffs(n_meas);

    std::array<double, 4> mu_r{}, mu_e{};
    std::array<double, 3> z_e{}, dw{}, dq{};

    for (long long k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * p.dt;
        if (k == inject_step) {
            const ComplexMatrix x = realize(flip_labels()[p.injection.qubit - 1]);
            *rho_r = x * (*rho_r) * x;
        }

        for (int c = 0; c < n_meas; ++c) {
            dw[c] = noise.wiener(p.trajectory_index, c, k, p.dt);
            checksum.add(dw[c]);
        }

        if (plan) {
            plan_means(rho_r->data(), *plan, mu_r.data());
            plan_means(rho_e->data(), *plan, mu_e.data());
        } else {
            const auto mr = syndrome_means(cs, *rho_r);
            const auto me = syndrome_means(cs, *rho_e);
            std::copy(mr.begin(), mr.end(), mu_r.begin());
            std::copy(me.begin(), me.end(), mu_e.begin());
        }
        for (int q = 0; q < 3; ++q) z_e[q] = z_mean(*rho_e, q + 1);
        for (int m = 0; m < n_meas; ++m) {
            out.diag.syndrome_lo = std::min({out.diag.syndrome_lo, mu_r[m], mu_e[m]});
            out.diag.syndrome_hi = std::max({out.diag.syndrome_hi, mu_r[m], mu_e[m]});
        }

        for (int c = 0; c < n_meas; ++c)
            dq[c] = measurement_record(mu_r[c], dw[c], cs.measurement[c].rate,
                                       cs.measurement[c].efficiency, p.dt);

        const std::array<double, 3> lam_next = decide_lambdas(
            p.controller, ctrl, t + p.dt, z_e,
            {mu_e[0], mu_e[1], mu_e[2]});

        if (k % p.output_stride == 0) {
            const double f = codespace_fidelity(psi_ref, *rho_r);
            out.times.push_back(t);
            out.fidelity.push_back(f);
            if (p.keep_frames) {
                Frame fr;
                fr.t = t;
                fr.f_logical = f;
                for (int q = 0; q < 3; ++q) {
                    fr.f_qubit[q] = per_qubit_fidelity(qubit_ref, *rho_r, q + 1);
                    fr.synd_real[q] = mu_r[q];
                    fr.synd_est[q] = mu_e[q];
                    fr.z_real[q] = z_mean(*rho_r, q + 1);
                    fr.z_est[q] = z_e[q];
                }
                fr.dw = dw;
                fr.dq = dq;
                fr.lambdas = lam;
                fr.has_step = true;
                out.frames.push_back(fr);
            }
        }

        if (plan) {
            std::array<double, 4> lam_dt{lam[0] * p.dt, lam[1] * p.dt, lam[2] * p.dt, 0.0};
            std::array<double, 4> s{};
            for (int c = 0; c < n_meas; ++c) s[c] = sqrt_keta[c] * dw[c];
            step_fn(rho_r->data(), rho_r_next->data(), *plan, lam_dt.data(), s.data(),
                    mu_r.data());
            std::swap(rho_r, rho_r_next);
            for (int c = 0; c < n_meas; ++c)
                s[c] = 2.0 * cs.measurement[c].rate * cs.measurement[c].efficiency *
                       (dq[c] - mu_e[c] * p.dt);
            step_fn(rho_e->data(), rho_e_next->data(), *plan, lam_dt.data(), s.data(),
                    mu_e.data());
            std::swap(rho_e, rho_e_next);
        } else {
            const ComplexMatrix* fb = nullptr;
            if (lam_active) {
                if (lam != fb_mat_lam) {
                    fb_mat = FeedbackHamiltonian{lam}.realize();
                    fb_mat_lam = lam;
                }
                fb = &fb_mat;
            }
            for (int c = 0; c < n_meas; ++c) coeffs[c] = sqrt_keta[c] * dw[c];
            generic_apply(*rho_r, cs, fb, coeffs, p.dt);
            for (int c = 0; c < n_meas; ++c)
                coeffs[c] = 2.0 * cs.measurement[c].rate * cs.measurement[c].efficiency *
                            (dq[c] - mu_e[c] * p.dt);
            generic_apply(*rho_e, cs, fb, coeffs, p.dt);
        }

        if ((k + 1) % cp_stride == 0 || k + 1 == n) {
            checkpoint(out.diag, *rho_r);
            checkpoint(out.diag, *rho_e);
            ++out.diag.checkpoints;
        }

        for (int q = 0; q < 3; ++q) {
            if (lam[q] != 0.0) {
                ++out.lambda_on_steps[q];
                if (std::isnan(out.first_lambda_on[q])) out.first_lambda_on[q] = t;
            }
        }
        const bool next_active = lam_next[0] != 0.0 || lam_next[1] != 0.0 || lam_next[2] != 0.0;
        if (next_active && !lam_active) ++out.correction_events;
        lam = lam_next;
        lam_active = next_active;
    }

    const double t_end = static_cast<double>(n) * p.dt;
    const double f_end = codespace_fidelity(psi_ref, *rho_r);
    out.times.push_back(t_end);
    out.fidelity.push_back(f_end);
    out.final_fidelity = f_end;
    if (p.keep_frames) {
        Frame fr;
        fr.t = t_end;
        fr.f_logical = f_end;
        if (plan) {
            plan_means(rho_r->data(), *plan, mu_r.data());
            plan_means(rho_e->data(), *plan, mu_e.data());
        } else {
            const auto mr = syndrome_means(cs, *rho_r);
            const auto me = syndrome_means(cs, *rho_e);
            std::copy(mr.begin(), mr.end(), mu_r.begin());
            std::copy(me.begin(), me.end(), mu_e.begin());
        }
        for (int q = 0; q < 3; ++q) {
            fr.f_qubit[q] = per_qubit_fidelity(qubit_ref, *rho_r, q + 1);
            fr.synd_real[q] = mu_r[q];
            fr.synd_est[q] = mu_e[q];
            fr.z_real[q] = z_mean(*rho_r, q + 1);
            fr.z_est[q] = z_mean(*rho_e, q + 1);
        }
        fr.has_step = false;
        out.frames.push_back(fr);
    }
    const auto mr_end = syndrome_means(cs, *rho_r);
    const auto me_end = syndrome_means(cs, *rho_e);
    for (int m = 0; m < n_meas; ++m) {
        out.diag.syndrome_lo = std::min({out.diag.syndrome_lo, mr_end[m], me_end[m]});
        out.diag.syndrome_hi = std::max({out.diag.syndrome_hi, mr_end[m], me_end[m]});
    }
    out.dw_checksum = checksum.state;
    return out;
}

}  // namespace cqec
