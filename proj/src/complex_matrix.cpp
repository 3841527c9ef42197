#include "cqec/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace cqec {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("matrix dimension out of range");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int da = a.dim(), db = b.dim();
    if (da * db > kMaxDim) throw std::invalid_argument("kron result exceeds 8x8 capacity");
    ComplexMatrix out(da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            for (int k = 0; k < db; ++k)
                for (int l = 0; l < db; ++l)
                    out.at(i * db + k, j * db + l) = a.at(i, j) * b.at(k, l);
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_dim(*this, o);
    const std::size_t n = static_cast<std::size_t>(dim_) * dim_;
    for (std::size_t i = 0; i < n; ++i) m_[i] += o.m_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_dim(*this, o);
    const std::size_t n = static_cast<std::size_t>(dim_) * dim_;
    for (std::size_t i = 0; i < n; ++i) m_[i] -= o.m_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cx s) {
    const std::size_t n = static_cast<std::size_t>(dim_) * dim_;
    for (std::size_t i = 0; i < n; ++i) m_[i] *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cx aik = a.at(i, k);
            if (aik == cx{}) continue;
            for (int j = 0; j < n; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out.at(i, j) = std::conj(at(j, i));
    return out;
}

cx ComplexMatrix::trace() const {
    cx t{};
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    const std::size_t n = static_cast<std::size_t>(dim_) * dim_;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(m_[i]));
    return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
    require_same_dim(*this, o);
    double m = 0.0;
    const std::size_t n = static_cast<std::size_t>(dim_) * dim_;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(m_[i] - o.m_[i]));
    return m;
}

void ComplexMatrix::hermitize() {
    for (int i = 0; i < dim_; ++i) {
        at(i, i) = cx{at(i, i).real(), 0.0};
        for (int j = i + 1; j < dim_; ++j) {
            const cx v = 0.5 * (at(i, j) + std::conj(at(j, i)));
            at(i, j) = v;
            at(j, i) = std::conj(v);
        }
    }
}

double ComplexMatrix::normalize_trace() {
    const double t = trace().real();
    if (!std::isfinite(t) || t <= 0.0) throw std::runtime_error("non-positive or non-finite trace");
    const double inv = 1.0 / t;
    const std::size_t n = static_cast<std::size_t>(dim_) * dim_;
    for (std::size_t i = 0; i < n; ++i) m_[i] *= inv;
    return t;
}

double StateVec::norm2() const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += std::norm(v[i]);
    return s;
}

ComplexMatrix projector(const StateVec& psi) {
    ComplexMatrix out(psi.dim);
    for (int i = 0; i < psi.dim; ++i)
        for (int j = 0; j < psi.dim; ++j) out.at(i, j) = psi.v[i] * std::conj(psi.v[j]);
    return out;
}

// Cyclic Jacobi on the 2n x 2n real-symmetric embedding [[Re, -Im], [Im, Re]].
// Each eigenvalue of the Hermitian input appears twice in the embedding.
double hermitian_min_eigenvalue(const ComplexMatrix& h) {
    const int n = h.dim();
    const int m = 2 * n;
    double a[16][16];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cx v = h.at(i, j);
            a[i][j] = v.real();
            a[i + n][j + n] = v.real();
            a[i][j + n] = -v.imag();
            a[i + n][j] = v.imag();
        }
    }
    for (int sweep = 0; sweep < 40; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-26) break;
        for (int p = 0; p < m; ++p) {
            for (int q = p + 1; q < m; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < m; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < m; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    double mn = a[0][0];
    for (int i = 1; i < m; ++i) mn = std::min(mn, a[i][i]);
    return mn;
}

}  // namespace cqec
