// linalg.hpp — small dense linear-algebra helpers on top of Eigen
//
// Free functions templated on the Eigen expression type so they compose with
// Eigen's expression templates without forcing intermediate evaluation.

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace qroute {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Operator on a finite-dimensional Hilbert space; entries dimensionless or in
// units of Gamma.
using Operator = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

// Exact Hermiticity test: hermitian(A) <=> max|A - A^dag| <= tol, with tol = 0
// by default so integer-valued constructions can be checked exactly.
template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = 0.0) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// Kronecker product, dense.
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Column-stacking vectorization and its inverse. vec(A X B) = (B^T (x) A) vec(X).
template <typename Derived>
Vector vec(const Eigen::MatrixBase<Derived>& m) {
    Matrix tmp = m;
    return Eigen::Map<const Vector>(tmp.data(), tmp.size());
}

inline Matrix unvec(const Vector& v, Eigen::Index dim) {
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

// Basis matrix unit |i><j| in dimension dim.
inline Matrix ketbra(Eigen::Index i, Eigen::Index j, Eigen::Index dim) {
    Matrix m = Matrix::Zero(dim, dim);
    m(i, j) = 1.0;
    return m;
}

} // namespace qroute
