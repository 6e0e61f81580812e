// qubit.hpp — dual-rail polarization qubits and the lossy routing channel.

#pragma once

#include "qroute/quantum.hpp"
#include "qroute/routing.hpp"

namespace qroute {

struct FullyBlockedError : SolverError {
    using SolverError::SolverError;
};

// |psi> = cos(theta/2) |H> + e^{i phi} sin(theta/2) |V>, unit norm.
struct PolarizationQubit {
    Eigen::Vector2cd amplitudes;
};

PolarizationQubit encode(double theta, double phi);

// Per-rail complex transmission amplitudes; |h| <= 1 keeps the channel
// completely positive. Both rails share one susceptibility in the ideal model
// so h_H == h_V there.
struct DualRailChannel {
    Complex h_h{1.0, 0.0};
    Complex h_v{1.0, 0.0};
    Direction direction = Direction::Forward;

    void validate() const;
};

struct ChannelResult {
    DensityMatrix rho_out;     // 2x2, renormalized
    double success_prob = 1.0; // trace of the unnormalized output
    double fidelity = 1.0;     // <psi_in| rho_out |psi_in>
};

// (a, b) -> (h_H a, h_V b), renormalized; throws FullyBlockedError when the
// success probability is below 1e-15.
ChannelResult apply_channel(const PolarizationQubit& q, const DualRailChannel& ch);

// Channel action on a density matrix: rho -> M rho M^dag with M = diag(h_H, h_V);
// returns the renormalized state and the success probability.
std::pair<DensityMatrix, double> apply_to_density(const DensityMatrix& rho,
                                                  const DualRailChannel& ch);

// <psi| rho |psi> for a 2x2 state; global phase of psi is irrelevant.
double fidelity(const DensityMatrix& rho, const PolarizationQubit& psi);

// Uhlmann fidelity between two 2x2 states (closed form).
double state_fidelity(const DensityMatrix& a, const DensityMatrix& b);

// Experimental imperfections of the dual-rail optics: a Jones matrix applied
// after the per-rail amplitudes (amplitude/phase imbalance plus crosstalk
// between the rails) and a depolarizing admixture on the normalized state.
// The ideal channel is jones = I, depolarization = 0.
struct RailImbalance {
    Eigen::Matrix2cd jones = Eigen::Matrix2cd::Identity();
    double depolarization = 0.0;

    void validate() const;
};

ChannelResult apply_channel(const PolarizationQubit& q, const DualRailChannel& ch,
                            const RailImbalance& imbalance);

} // namespace qroute
