// integrate.hpp — adaptive master-equation propagation on a time grid.

#pragma once

#include "qroute/quantum.hpp"

#include <functional>
#include <vector>

namespace qroute {

struct IntegrationError : SolverError {
    IntegrationError(const std::string& msg, double t) : SolverError(msg), time(t) {}
    double time;
};

// Superoperator at time t, acting on column-stacked rho. Piecewise-smooth in t.
using TimeDependentLiouvillian = std::function<Matrix(double)>;

// Raw evolved states at the requested grid points. Trace is carried as-is so
// trace-decaying generators report their norm loss; use make_density_matrix
// on a state to get the normalized, validated form.
struct Trajectory {
    std::vector<double> times;
    std::vector<Matrix> states;
};

struct EvolveOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
};

// Dormand-Prince 5(4) with PI step-size control. The grid must be strictly
// increasing; every grid point is hit exactly. Throws IntegrationError with
// the failing time stamp on step-size underflow.
Trajectory evolve(const DensityMatrix& rho0, const TimeDependentLiouvillian& liouvillian,
                  const std::vector<double>& grid, const EvolveOptions& opts = {});

// Convenience overload for a constant generator.
Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& liouvillian,
                  const std::vector<double>& grid, const EvolveOptions& opts = {});

} // namespace qroute
