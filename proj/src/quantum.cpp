#include "qroute/quantum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace qroute {

namespace {

constexpr Eigen::Index kMaxDim = 16;

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(what) + ": matrix must be square");
}

} // namespace

double min_eigenvalue(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

DensityMatrix make_density_matrix(const Matrix& m, double herm_tol, double eig_floor) {
    require_square(m, "make_density_matrix");
    const Complex tr = m.trace();
    if (std::abs(tr) < 1e-14)
        throw std::invalid_argument("make_density_matrix: trace is zero");
    Matrix rho = m / tr;
    const double herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > herm_tol)
        throw std::invalid_argument("make_density_matrix: not Hermitian, max|rho - rho^dag| = " +
                                    std::to_string(herm_err));
    rho = 0.5 * (rho + rho.adjoint().eval());
    const double lam_min = min_eigenvalue(rho);
    if (lam_min < eig_floor)
        throw std::invalid_argument("make_density_matrix: negative eigenvalue " +
                                    std::to_string(lam_min));
    return DensityMatrix{std::move(rho)};
}

Eigen::RowVectorXcd Liouvillian::trace_row() const {
    Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(dim * dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        row += matrix.row(i * dim + i);
    return row;
}

Liouvillian build_liouvillian(const Operator& h, const std::vector<LindbladTerm>& terms) {
    require_square(h, "build_liouvillian");
    const Eigen::Index dim = h.rows();
    if (dim < 2)
        throw std::invalid_argument("build_liouvillian: dim must be >= 2");
    if (dim > kMaxDim)
        throw std::invalid_argument("build_liouvillian: dim > 16 unsupported");

    const Matrix id = Matrix::Identity(dim, dim);

    // vec(H rho) = (I (x) H) vec, vec(rho H^dag) = (conj(H) (x) I) vec.
    Matrix liou = -kI * (kron(id, h) - kron(h.conjugate(), id));

    for (const auto& term : terms) {
        if (term.rate < 0.0)
            throw std::invalid_argument("build_liouvillian: negative rate");
        if (term.jump.rows() != dim || term.jump.cols() != dim)
            throw std::invalid_argument("build_liouvillian: jump operator dimension mismatch");
        if (term.rate == 0.0) continue;
        const Matrix& j = term.jump;
        const Matrix jdj = j.adjoint() * j;
        liou += term.rate * (kron(j.conjugate(), j)
                             - 0.5 * kron(id, jdj)
                             - 0.5 * kron(jdj.transpose(), id));
    }

    Liouvillian out{dim, std::move(liou), true};
    out.trace_preserving = out.trace_row().cwiseAbs().maxCoeff() < 1e-12;
    return out;
}

DensityMatrix steady_state(const Liouvillian& liouvillian) {
    const Eigen::Index dim = liouvillian.dim;
    const Eigen::Index n2 = dim * dim;

    Eigen::JacobiSVD<Matrix> svd(liouvillian.matrix, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = std::max(sv(0), 1.0) * 1e-12;

    Eigen::Index kernel_dim = 0;
    for (Eigen::Index i = 0; i < n2; ++i)
        if (sv(i) < cutoff) ++kernel_dim;

    if (kernel_dim == 0)
        throw NoSteadyState("steady_state: Liouvillian has empty kernel (trace-decaying map)");
    if (kernel_dim > 1)
        throw NonUniqueSteadyState("steady_state: non-unique steady state, kernel dimension " +
                                   std::to_string(kernel_dim));

    Vector null_vec = svd.matrixV().col(n2 - 1);
    Matrix rho = unvec(null_vec, dim);
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-8)
        throw NoSteadyState("steady_state: kernel element carries no trace, no trace-1 solution");
    rho /= tr;
    rho = 0.5 * (rho + rho.adjoint().eval());

    const double residual = (liouvillian.matrix * vec(rho)).norm();
    if (residual > 1e-10 * std::max(1.0, liouvillian.matrix.norm()))
        throw SolverError("steady_state: residual " + std::to_string(residual) +
                          " exceeds tolerance");
    return DensityMatrix{std::move(rho)};
}

std::vector<Complex> eigenvalues(const Operator& h) {
    require_square(h, "eigenvalues");
    const Eigen::Index dim = h.rows();
    std::vector<Complex> vals;
    vals.reserve(dim);

    bool diagonal = true;
    for (Eigen::Index i = 0; i < dim && diagonal; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            if (i != j && h(i, j) != Complex{0.0}) { diagonal = false; break; }

    if (diagonal) {
        for (Eigen::Index i = 0; i < dim; ++i) vals.push_back(h(i, i));
    } else if (is_hermitian(h)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < dim; ++i) vals.emplace_back(es.eigenvalues()(i), 0.0);
    } else {
        Eigen::ComplexEigenSolver<Matrix> es(h, false);
        for (Eigen::Index i = 0; i < dim; ++i) vals.push_back(es.eigenvalues()(i));
    }

    std::sort(vals.begin(), vals.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return vals;
}

} // namespace qroute
