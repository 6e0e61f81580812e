// quantum.hpp — operator algebra, Liouvillian construction, and steady states
// for small open quantum systems (dim <= 16).

#pragma once

#include "qroute/linalg.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qroute {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Kernel of the Liouvillian has dimension > 1.
struct NonUniqueSteadyState : SolverError {
    using SolverError::SolverError;
};

// Kernel is empty or carries no trace (trace-decaying generator).
struct NoSteadyState : SolverError {
    using SolverError::SolverError;
};

// Positive, unit-trace density matrix. Construct through `make_density_matrix`
// which normalizes the trace and validates Hermiticity and positivity.
struct DensityMatrix {
    Matrix mat;

    Eigen::Index dim() const { return mat.rows(); }
    double trace_error() const { return std::abs(mat.trace() - Complex{1.0}); }
};

DensityMatrix make_density_matrix(const Matrix& m, double herm_tol = 1e-12,
                                  double eig_floor = -1e-8);

double min_eigenvalue(const Matrix& hermitian);

// One jump operator with its nonnegative rate (units of Gamma).
struct LindbladTerm {
    Operator jump;
    double rate = 0.0;
};

// Superoperator matrix acting on column-stacked rho. `trace_preserving` is
// false when the Hamiltonian's anti-Hermitian part drains norm; the map is
// then trace-decreasing and has no unit-trace fixed point in general.
struct Liouvillian {
    Eigen::Index dim = 0;
    Matrix matrix;            // dim^2 x dim^2
    bool trace_preserving = true;

    // Row functional r with r . vec(rho) = d/dt Tr(rho).
    Eigen::RowVectorXcd trace_row() const;
};

// rho_dot = -i (H rho - rho H^dag) + sum_k rate_k (J rho J^dag - {J^dag J, rho}/2).
// H may be non-Hermitian; the lost norm is photon loss into the dissipative
// channel rather than an extra jump operator.
Liouvillian build_liouvillian(const Operator& h, const std::vector<LindbladTerm>& terms);

// Unique unit-trace kernel element of L. Throws NonUniqueSteadyState when the
// kernel has dimension > 1 and NoSteadyState when no trace-1 solution exists.
// Postcondition: ||L vec(rho)|| < 1e-10 and Tr rho = 1.
DensityMatrix steady_state(const Liouvillian& liouvillian);

// Eigenvalues sorted by real part, then imaginary part. Diagonal inputs are
// returned exactly; Hermitian inputs go through the self-adjoint solver so
// their spectrum is real by construction.
std::vector<Complex> eigenvalues(const Operator& h);

} // namespace qroute
