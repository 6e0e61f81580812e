// calibrate.hpp — least-squares calibration of the routing model and channel
// imperfections against measured operating-point numbers.

#pragma once

#include "qroute/qubit.hpp"
#include "qroute/routing.hpp"

#include <functional>
#include <vector>

namespace qroute {

// Damped Gauss-Newton with forward-difference Jacobian. Deterministic.
using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
Eigen::VectorXd levenberg_marquardt(const ResidualFn& residuals, Eigen::VectorXd x0,
                                    int max_iter = 200, double tol = 1e-14);

struct CalibrationTargets {
    double depth = 14.0;              // operating point for the transmission fit
    double t_forward = 0.929;
    double t_backward = 0.026;
    double isolation_depth = 40.0;    // where the noise floor saturates the isolation
    double isolation_db_target = 20.0;

    // Per-state channel targets, ordered (H, V, R, D).
    std::vector<double> qubit_t_forward = {0.93, 0.96, 0.94, 0.94};
    std::vector<double> qubit_t_backward = {0.019, 0.032, 0.033, 0.022};
    std::vector<double> qubit_fidelity = {0.92, 0.97, 0.93, 0.94};
};

struct CalibrationResult {
    RoutingParams params;          // fitted omega_c, omega_diss, gamma_gs
    double noise_floor = 0.0;      // fitted detection floor b
    RailImbalance imbalance_forward;
    RailImbalance imbalance_backward;

    double t_forward_model = 0.0;  // transmissions at the fitted point
    double t_backward_model = 0.0;
    double isolation_model_db = 0.0;
    double residual_routing = 0.0;
    double residual_channel = 0.0;
};

// Stage 1 fits {omega_c, omega_diss, gamma_gs} to the two transmissions at
// `depth`; stage 2 solves the noise floor b so the isolation at
// `isolation_depth` hits its target; stage 3 fits the rail-imbalance Jones
// matrices (and a depolarizing admixture on the forward side) to the
// per-state transmission and fidelity lists.
CalibrationResult calibrate(const CalibrationTargets& targets, const RoutingParams& start,
                            const ZeemanScheme& scheme);

// The four reference states, ordered (H, V, R, D) as in the target lists.
std::vector<PolarizationQubit> reference_states();
std::vector<std::string> reference_state_names();

} // namespace qroute
