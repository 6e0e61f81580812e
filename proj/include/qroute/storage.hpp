// storage.hpp — spin-wave write/store/read dynamics (the diode experiment).
//
// A weak signal pulse is written into the ground-state coherence by EIT under
// a two-plateau control sequence, held during a dark interval, and retrieved
// by the read plateau. The propagation direction enters only through the
// non-Hermitian ground-level term, which suppresses backward storage.

#pragma once

#include "qroute/integrate.hpp"
#include "qroute/routing.hpp"

#include <iosfwd>
#include <vector>

namespace qroute {

// Times in units of 1/Gamma; control_peak in units of Gamma.
struct PulseSequence {
    double write_duration;
    double dark_time;
    double read_duration;
    double control_peak;
    double edge_smoothing;

    double write_end() const { return write_duration; }
    double read_start() const { return write_duration + dark_time; }
    double total() const { return write_duration + dark_time + read_duration; }

    void validate() const;
};

// Defaults: 1 us write, 500 ns dark, 1 us read (converted at Gamma = 2pi*6 MHz).
PulseSequence default_pulse_sequence(double control_peak);

// Sampled complex envelope; on input this is the probe Rabi envelope Omega_p(t).
struct SignalWaveform {
    std::vector<double> time;       // strictly increasing, units 1/Gamma
    std::vector<Complex> amplitude;

    double energy() const;  // trapezoidal sum of |amplitude|^2 dt
    void validate() const;
};

// Smooth two-plateau envelope: control_peak on the write and read windows with
// quintic-smoothstep edges contained inside the windows, exactly zero during
// the dark time, exact plateau value at the window centers.
double control_envelope(const PulseSequence& seq, double t);

// Gaussian input pulse centered in the write window, smoothly windowed so its
// support lies strictly inside [0, write_duration].
SignalWaveform gaussian_input(const PulseSequence& seq, double fwhm, double peak_rabi,
                              int samples = 1200);

struct StorageResult {
    SignalWaveform output;            // emission envelope over the full sequence
    double retrieval_efficiency = 0;  // read-window output energy / input energy
    double spin_wave_peak = 0;        // max |rho_gs| during the dark time
};

// Emission coupling relating the read-out optical coherence to the output
// envelope; calibrated once against the routing model's operating point.
inline constexpr double kStorageCoupling = 0.45;

StorageResult simulate_storage(Direction dir, const PulseSequence& seq,
                               const RoutingParams& params, const ZeemanScheme& scheme,
                               const SignalWaveform& input,
                               Helicity sigma_control = Helicity{+1},
                               double coupling = kStorageCoupling);

// 10 log10(forward efficiency / backward efficiency), floored at 1e-12.
double diode_contrast(const StorageResult& forward, const StorageResult& backward);

// CSV with columns time_ns, re_amp, im_amp, abs2.
void waveform_to_csv(std::ostream& os, const SignalWaveform& w);
SignalWaveform waveform_from_csv(std::istream& is);

} // namespace qroute
