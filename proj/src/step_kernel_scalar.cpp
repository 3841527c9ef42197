#include <cmath>

#include "cqec/step_kernel.hpp"

namespace cqec {

double sme_step_scalar(const cx* rho, cx* out, const StructuredPlan& p, const double* lambda_dt,
                       const double* s, const double* mu) {
    const int n = p.dim;
    double u[8];
    double v = 0.0;
    for (int m = 0; m < p.n_meas; ++m) v += 2.0 * s[m] * mu[m];
    for (int i = 0; i < n; ++i) {
        double ui = 0.0;
        for (int m = 0; m < p.n_meas; ++m) ui += s[m] * p.meas_diag[m][i];
        u[i] = ui;
    }
    bool any_fb = false;
    for (int q = 0; q < p.n_fb; ++q) any_fb = any_fb || lambda_dt[q] != 0.0;

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cx acc = rho[i * n + j] * (p.drift[i * 8 + j] + u[i] + u[j] - v);
            for (int q = 0; q < p.n_flip; ++q) {
                const int mq = p.flip_mask[q];
                acc += p.gamma_dt[q] * rho[(i ^ mq) * n + (j ^ mq)];
            }
            if (any_fb) {
                for (int q = 0; q < p.n_fb; ++q) {
                    if (lambda_dt[q] == 0.0) continue;
                    const int mq = p.fb_mask[q];
                    const cx t = rho[(i ^ mq) * n + j] - rho[i * n + (j ^ mq)];
                    acc += lambda_dt[q] * cx{t.imag(), -t.real()};  // -i * t
                }
            }
            out[i * n + j] = acc;
        }
    }

    return hermitize_normalize(out, n);
}

}  // namespace cqec
