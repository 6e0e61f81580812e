// units.hpp — conversions between lab units and the internal Gamma = 1 system
//
// All model rates and detunings are dimensionless (units of Gamma), times are
// in units of 1/Gamma. Physical conversions happen only at the CLI boundary,
// using Gamma = 2*pi * 6 MHz (D2-line natural linewidth of the ensemble).

#pragma once

#include <numbers>

namespace qroute::units {

// Natural linewidth in angular frequency, rad/s.
inline constexpr double kGammaMHz = 6.0;
inline constexpr double kGammaRadPerSec = 2.0 * std::numbers::pi * kGammaMHz * 1e6;

// Detunings quoted in MHz are ordinary frequencies: x MHz -> 2*pi*x*1e6 rad/s.
inline constexpr double mhz_to_gamma(double mhz) { return mhz / kGammaMHz; }
inline constexpr double gamma_to_mhz(double g) { return g * kGammaMHz; }

inline constexpr double ns_to_gamma_time(double ns) { return ns * 1e-9 * kGammaRadPerSec; }
inline constexpr double gamma_time_to_ns(double t) { return t / (1e-9 * kGammaRadPerSec); }

inline constexpr double us_to_gamma_time(double us) { return ns_to_gamma_time(us * 1e3); }

} // namespace qroute::units
