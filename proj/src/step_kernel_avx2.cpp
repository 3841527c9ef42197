#ifdef CQEC_HAVE_AVX2

#include <immintrin.h>

#include <cmath>

#include "cqec/step_kernel.hpp"

namespace cqec {

namespace {

// -i * t for interleaved complex lanes: (x + iy) -> (y - ix).
inline __m256d neg_i(__m256d t) {
    const __m256d swapped = _mm256_permute_pd(t, 0x5);
    const __m256d sign = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    return _mm256_xor_pd(swapped, sign);
}

// Column permutation j -> j ^ mask of one row held as four registers of
// two interleaved complex values each.
inline void col_perm(__m256d r[4], int mask) {
    __m256d t;
    switch (mask) {
        case 1:
            r[0] = _mm256_permute2f128_pd(r[0], r[0], 0x01);
            r[1] = _mm256_permute2f128_pd(r[1], r[1], 0x01);
            r[2] = _mm256_permute2f128_pd(r[2], r[2], 0x01);
            r[3] = _mm256_permute2f128_pd(r[3], r[3], 0x01);
            break;
        case 2:
            t = r[0]; r[0] = r[1]; r[1] = t;
            t = r[2]; r[2] = r[3]; r[3] = t;
            break;
        case 4:
            t = r[0]; r[0] = r[2]; r[2] = t;
            t = r[1]; r[1] = r[3]; r[3] = t;
            break;
        default:
            break;
    }
}

inline void load_row(const double* src, __m256d r[4]) {
    r[0] = _mm256_loadu_pd(src);
    r[1] = _mm256_loadu_pd(src + 4);
    r[2] = _mm256_loadu_pd(src + 8);
    r[3] = _mm256_loadu_pd(src + 12);
}

}  // namespace

double sme_step_avx2(const cx* rho, cx* out, const StructuredPlan& p, const double* lambda_dt,
                     const double* s, const double* mu) {
    const double* R = reinterpret_cast<const double*>(rho);
    double* O = reinterpret_cast<double*>(out);

    double u[8];
    alignas(32) double udup[16];
    double v = 0.0;
    for (int m = 0; m < p.n_meas; ++m) v += 2.0 * s[m] * mu[m];
    for (int i = 0; i < 8; ++i) {
        double ui = 0.0;
        for (int m = 0; m < p.n_meas; ++m) ui += s[m] * p.meas_diag[m][i];
        u[i] = ui;
        udup[2 * i] = ui;
        udup[2 * i + 1] = ui;
    }
    bool any_fb = false;
    for (int q = 0; q < p.n_fb; ++q) any_fb = any_fb || lambda_dt[q] != 0.0;

    for (int i = 0; i < 8; ++i) {
        __m256d a[4];
        load_row(R + 16 * i, a);
        const double* dd = p.drift_dup.data() + 16 * i;
        const __m256d base = _mm256_set1_pd(u[i] - v);
        __m256d o[4];
        for (int k = 0; k < 4; ++k) {
            const __m256d c = _mm256_add_pd(
                _mm256_add_pd(_mm256_loadu_pd(dd + 4 * k), _mm256_load_pd(udup + 4 * k)), base);
            o[k] = _mm256_mul_pd(a[k], c);
        }
        for (int q = 0; q < p.n_flip; ++q) {
            const int mq = p.flip_mask[q];
            __m256d b[4];
            load_row(R + 16 * (i ^ mq), b);
            col_perm(b, mq);
            const __m256d gdt = _mm256_set1_pd(p.gamma_dt[q]);
            for (int k = 0; k < 4; ++k) o[k] = _mm256_fmadd_pd(gdt, b[k], o[k]);
        }
        if (any_fb) {
            for (int q = 0; q < p.n_fb; ++q) {
                if (lambda_dt[q] == 0.0) continue;
                const int mq = p.fb_mask[q];
                __m256d b[4];
                load_row(R + 16 * (i ^ mq), b);
                __m256d pa[4] = {a[0], a[1], a[2], a[3]};
                col_perm(pa, mq);
                const __m256d ldt = _mm256_set1_pd(lambda_dt[q]);
                for (int k = 0; k < 4; ++k)
                    o[k] = _mm256_fmadd_pd(ldt, neg_i(_mm256_sub_pd(b[k], pa[k])), o[k]);
            }
        }
        _mm256_storeu_pd(O + 16 * i, o[0]);
        _mm256_storeu_pd(O + 16 * i + 4, o[1]);
        _mm256_storeu_pd(O + 16 * i + 8, o[2]);
        _mm256_storeu_pd(O + 16 * i + 12, o[3]);
    }

    return hermitize_normalize(out, 8);
}

}  // namespace cqec

#endif  // CQEC_HAVE_AVX2
