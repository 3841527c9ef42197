#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace cqec {

using cx = std::complex<double>;

// Dense complex matrix with fixed 8x8 capacity, packed row-major.
// Dimensions in use are 2, 4 and 8 (one to three qubits).
class ComplexMatrix {
public:
    static constexpr int kMaxDim = 8;

    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim);

    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
    static ComplexMatrix identity(int dim);
    static ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

    int dim() const { return dim_; }
    cx& at(int r, int c) { return m_[static_cast<std::size_t>(r) * dim_ + c]; }
    const cx& at(int r, int c) const { return m_[static_cast<std::size_t>(r) * dim_ + c]; }
    cx* data() { return m_.data(); }
    const cx* data() const { return m_.data(); }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cx s);
    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cx s) { return a *= s; }
    friend ComplexMatrix operator*(cx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);  // matrix product

    ComplexMatrix adjoint() const;
    cx trace() const;
    double max_abs() const;
    double max_abs_diff(const ComplexMatrix& o) const;

    void hermitize();          // (M + M^dagger) / 2
    double normalize_trace();  // divide by Re(trace); returns the trace that was found

private:
    int dim_ = 0;
    std::array<cx, kMaxDim * kMaxDim> m_{};
};

// State vector over up to three qubits.
struct StateVec {
    int dim = 0;
    std::array<cx, ComplexMatrix::kMaxDim> v{};
    double norm2() const;
};

// |psi><psi|
ComplexMatrix projector(const StateVec& psi);

// Smallest eigenvalue of a Hermitian matrix (Jacobi on the real-symmetric
// embedding). Diagnostic use; input is assumed Hermitian.
double hermitian_min_eigenvalue(const ComplexMatrix& h);

}  // namespace cqec
