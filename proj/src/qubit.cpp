#include "qroute/qubit.hpp"

#include <cmath>
#include <numbers>

namespace qroute {

namespace {

constexpr double kBlockedThreshold = 1e-15;

ChannelResult result_from_vector(const Eigen::Vector2cd& in, const Eigen::Vector2cd& out,
                                 double depolarization) {
    const double success = out.squaredNorm();
    if (success < kBlockedThreshold)
        throw FullyBlockedError("apply_channel: qubit fully blocked (success probability ~ 0)");
    Matrix rho = (out * out.adjoint()) / success;
    if (depolarization > 0.0)
        rho = (1.0 - depolarization) * rho + depolarization * 0.5 * Matrix::Identity(2, 2);
    ChannelResult res{make_density_matrix(rho), success, 0.0};
    res.fidelity = std::real((in.adjoint() * res.rho_out.mat * in)(0, 0));
    return res;
}

} // namespace

PolarizationQubit encode(double theta, double phi) {
    if (theta < 0.0 || theta > std::numbers::pi)
        throw std::invalid_argument("encode: theta must lie in [0, pi]");
    PolarizationQubit q;
    q.amplitudes << std::cos(0.5 * theta),
                    std::exp(kI * phi) * std::sin(0.5 * theta);
    return q;
}

void DualRailChannel::validate() const {
    if (std::abs(h_h) > 1.0 + 1e-12 || std::abs(h_v) > 1.0 + 1e-12)
        throw std::invalid_argument("DualRailChannel: |h| must be <= 1");
}

void RailImbalance::validate() const {
    if (depolarization < 0.0 || depolarization > 1.0)
        throw std::invalid_argument("RailImbalance: depolarization must lie in [0, 1]");
}

ChannelResult apply_channel(const PolarizationQubit& q, const DualRailChannel& ch) {
    ch.validate();
    const Eigen::Vector2cd out{ch.h_h * q.amplitudes(0), ch.h_v * q.amplitudes(1)};
    return result_from_vector(q.amplitudes, out, 0.0);
}

ChannelResult apply_channel(const PolarizationQubit& q, const DualRailChannel& ch,
                            const RailImbalance& imbalance) {
    ch.validate();
    imbalance.validate();
    const Eigen::Vector2cd rails{ch.h_h * q.amplitudes(0), ch.h_v * q.amplitudes(1)};
    const Eigen::Vector2cd out = imbalance.jones * rails;
    return result_from_vector(q.amplitudes, out, imbalance.depolarization);
}

std::pair<DensityMatrix, double> apply_to_density(const DensityMatrix& rho,
                                                  const DualRailChannel& ch) {
    ch.validate();
    if (rho.dim() != 2)
        throw std::invalid_argument("apply_to_density: expected a 2x2 state");
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = ch.h_h;
    m(1, 1) = ch.h_v;
    const Matrix out = m * rho.mat * m.adjoint();
    const double success = std::real(out.trace());
    if (success < kBlockedThreshold)
        throw FullyBlockedError("apply_to_density: state fully blocked");
    return {make_density_matrix(out), success};
}

double fidelity(const DensityMatrix& rho, const PolarizationQubit& psi) {
    if (rho.dim() != 2)
        throw std::invalid_argument("fidelity: expected a 2x2 state");
    return std::real((psi.amplitudes.adjoint() * rho.mat * psi.amplitudes)(0, 0));
}

double state_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2)
        throw std::invalid_argument("state_fidelity: expected 2x2 states");
    // For qubits: F = Tr(a b) + 2 sqrt(det a * det b).
    const double tr = std::real((a.mat * b.mat).trace());
    const double det_a = std::max(0.0, std::real(a.mat.determinant()));
    const double det_b = std::max(0.0, std::real(b.mat.determinant()));
    return std::min(1.0, tr + 2.0 * std::sqrt(det_a * det_b));
}

} // namespace qroute
