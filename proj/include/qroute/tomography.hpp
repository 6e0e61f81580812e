// tomography.hpp — six-basis projective measurement simulation and
// maximum-likelihood reconstruction of 2x2 states.

#pragma once

#include "qroute/quantum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qroute::tomo {

enum class Basis { H, V, D, A, R, L };

inline constexpr Basis kAllBases[] = {Basis::H, Basis::V, Basis::D,
                                      Basis::A, Basis::R, Basis::L};

Eigen::Vector2cd basis_vector(Basis b);
const char* basis_name(Basis b);
Basis basis_from_name(const std::string& name);

struct MeasurementRecord {
    Basis basis = Basis::H;
    std::int64_t counts = 0;
    std::int64_t shots = 0;
};

// Binomial counts with success probability <b|rho|b> for each of the six
// bases, drawn from a generator seeded per (seed, basis) so identical seeds
// give identical records regardless of evaluation order.
std::vector<MeasurementRecord> simulate_counts(const DensityMatrix& rho, std::int64_t shots,
                                               std::uint64_t seed);

struct LinearInversionResult {
    Matrix rho;           // Hermitian, unit trace; may have a negative eigenvalue
    bool physical = true; // min eigenvalue >= -1e-12
};

// rho_lin = (I + sum_k s_k sigma_k) / 2 from the Stokes estimates.
LinearInversionResult linear_inversion(const std::vector<MeasurementRecord>& records);

struct ReconstructionResult {
    DensityMatrix rho_hat;
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Maximizes the product-binomial log-likelihood over rho = L^dag L / Tr(L^dag L)
// with L lower-triangular, so the estimate is positive and unit-trace by
// construction. Gradient ascent with backtracking; converged means the
// gradient norm dropped below tol. Non-convergence is reported, not thrown.
ReconstructionResult mle_reconstruct(const std::vector<MeasurementRecord>& records,
                                     double tol = 1e-10, int max_iter = 10000);

double log_likelihood(const std::vector<MeasurementRecord>& records, const DensityMatrix& rho);

// JSON wire format: [{"basis":"H","counts":...,"shots":...}, ...] and a 2x2
// complex matrix as {"re": [[..]], "im": [[..]]}.
std::string records_to_json(const std::vector<MeasurementRecord>& records);
std::vector<MeasurementRecord> records_from_json(const std::string& text);
std::string density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const std::string& text);

} // namespace qroute::tomo
