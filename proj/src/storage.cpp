#include "qroute/storage.hpp"

#include "qroute/io.hpp"
#include "qroute/units.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace qroute {

namespace {

enum Level : Eigen::Index { kG = 0, kS = 1, kE = 2 };

// C2 smoothstep on [0, 1].
double smoothstep(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x * x * x * (x * (6.0 * x - 15.0) + 10.0);
}

// Rising/falling edges contained inside [lo, hi].
double plateau(double t, double lo, double hi, double edge) {
    if (t <= lo || t >= hi) return 0.0;
    if (t < lo + edge) return smoothstep((t - lo) / edge);
    if (t > hi - edge) return smoothstep((hi - t) / edge);
    return 1.0;
}

Complex interp(const SignalWaveform& w, double t) {
    if (w.time.empty() || t < w.time.front() || t > w.time.back()) return {0.0, 0.0};
    const auto it = std::upper_bound(w.time.begin(), w.time.end(), t);
    if (it == w.time.begin()) return w.amplitude.front();
    if (it == w.time.end()) return w.amplitude.back();
    const std::size_t hi = static_cast<std::size_t>(it - w.time.begin());
    const std::size_t lo = hi - 1;
    const double u = (t - w.time[lo]) / (w.time[hi] - w.time[lo]);
    return (1.0 - u) * w.amplitude[lo] + u * w.amplitude[hi];
}

// Superoperator of the commutator part for one Hamiltonian term.
Matrix unitary_superop(const Matrix& h) {
    const Matrix id = Matrix::Identity(h.rows(), h.cols());
    return -kI * (kron(id, h) - kron(h.conjugate(), id));
}

} // namespace

void PulseSequence::validate() const {
    if (write_duration <= 0.0 || dark_time <= 0.0 || read_duration <= 0.0)
        throw std::invalid_argument("PulseSequence: durations must be > 0");
    if (control_peak < 0.0)
        throw std::invalid_argument("PulseSequence: control_peak must be >= 0");
    if (edge_smoothing <= 0.0 || edge_smoothing >= 0.25 * write_duration)
        throw std::invalid_argument("PulseSequence: edge_smoothing must lie in (0, write/4)");
}

PulseSequence default_pulse_sequence(double control_peak) {
    PulseSequence seq{units::us_to_gamma_time(1.0), units::ns_to_gamma_time(500.0),
                      units::us_to_gamma_time(1.0), control_peak,
                      units::ns_to_gamma_time(12.0)};
    return seq;
}

double control_envelope(const PulseSequence& seq, double t) {
    if (t < 0.0) throw std::invalid_argument("control_envelope: t must be >= 0");
    const double write = plateau(t, 0.0, seq.write_end(), seq.edge_smoothing);
    const double read = plateau(t, seq.read_start(), seq.total(), seq.edge_smoothing);
    return seq.control_peak * (write + read);
}

double SignalWaveform::energy() const {
    double e = 0.0;
    for (std::size_t i = 1; i < time.size(); ++i) {
        const double dt = time[i] - time[i - 1];
        e += 0.5 * dt * (std::norm(amplitude[i]) + std::norm(amplitude[i - 1]));
    }
    return e;
}

void SignalWaveform::validate() const {
    if (time.size() != amplitude.size())
        throw std::invalid_argument("SignalWaveform: time/amplitude size mismatch");
    if (time.size() < 2)
        throw std::invalid_argument("SignalWaveform: need at least two samples");
    for (std::size_t i = 1; i < time.size(); ++i)
        if (time[i] <= time[i - 1])
            throw std::invalid_argument("SignalWaveform: time grid must be strictly increasing");
    if (!(energy() > 0.0))
        throw std::invalid_argument("SignalWaveform: input energy must be > 0");
}

SignalWaveform gaussian_input(const PulseSequence& seq, double fwhm, double peak_rabi,
                              int samples) {
    if (fwhm <= 0.0 || peak_rabi <= 0.0 || samples < 8)
        throw std::invalid_argument("gaussian_input: invalid pulse parameters");
    const double center = 0.5 * seq.write_duration;
    const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    SignalWaveform w;
    w.time.reserve(samples);
    w.amplitude.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double t = seq.write_duration * static_cast<double>(i) /
                         static_cast<double>(samples - 1);
        const double window = plateau(t, 0.0, seq.write_duration, seq.edge_smoothing);
        const double g = std::exp(-0.5 * std::pow((t - center) / sigma, 2));
        w.time.push_back(t);
        w.amplitude.emplace_back(peak_rabi * g * window, 0.0);
    }
    return w;
}

StorageResult simulate_storage(Direction dir, const PulseSequence& seq,
                               const RoutingParams& params, const ZeemanScheme& scheme,
                               const SignalWaveform& input, Helicity sigma_control,
                               double coupling) {
    seq.validate();
    params.validate();
    scheme.validate();
    input.validate();
    if (coupling <= 0.0)
        throw std::invalid_argument("simulate_storage: coupling must be > 0");
    if (input.time.front() < -1e-12 || input.time.back() > seq.write_end() + 1e-12)
        throw std::invalid_argument("simulate_storage: input must be supported in the write window");

    const Complex lambda = lambda_for(dir, sigma_control, params);

    // The Liouvillian is linear in the Hamiltonian, so the time dependence
    // reduces to three fixed superoperators scaled by the envelopes.
    RoutingParams p0 = params;
    p0.omega_p = 1.0;  // placeholder, drives are injected below
    Operator h_static(3, 3);
    h_static << lambda, 0.0, 0.0,
                0.0, p0.delta(), 0.0,
                0.0, 0.0, p0.delta_p;
    const Liouvillian liou_static = build_liouvillian(h_static, default_lindblad_terms(p0));

    Matrix coupling_p(3, 3), coupling_p_im(3, 3), coupling_c(3, 3);
    coupling_p.setZero();
    coupling_p(kE, kG) = 0.5;
    coupling_p(kG, kE) = 0.5;
    coupling_p_im.setZero();
    coupling_p_im(kE, kG) = 0.5 * kI;
    coupling_p_im(kG, kE) = -0.5 * kI;
    coupling_c.setZero();
    coupling_c(kE, kS) = 0.5;
    coupling_c(kS, kE) = 0.5;

    const Matrix sup_p_re = unitary_superop(coupling_p);
    const Matrix sup_p_im = unitary_superop(coupling_p_im);
    const Matrix sup_c = unitary_superop(coupling_c);

    const auto liouvillian_at = [&](double t) {
        const Complex omega_p = interp(input, t);
        const double omega_c = control_envelope(seq, t);
        Matrix m = liou_static.matrix;
        if (omega_p.real() != 0.0) m += omega_p.real() * sup_p_re;
        if (omega_p.imag() != 0.0) m += omega_p.imag() * sup_p_im;
        if (omega_c != 0.0) m += omega_c * sup_c;
        return m;
    };

    // Output grid: uniform over the full sequence, with the window edges
    // included so the integrator never steps across an envelope joint.
    const int n_samples = 1200;
    std::vector<double> grid;
    grid.reserve(n_samples + 4);
    for (int i = 0; i < n_samples; ++i)
        grid.push_back(seq.total() * static_cast<double>(i) / static_cast<double>(n_samples - 1));
    for (double edge : {seq.write_end(), seq.read_start()}) grid.push_back(edge);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               grid.end());

    Matrix rho0 = Matrix::Zero(3, 3);
    rho0(kG, kG) = 1.0;
    const Trajectory traj = evolve(make_density_matrix(rho0), liouvillian_at, grid);

    StorageResult result;
    result.output.time = traj.times;
    result.output.amplitude.resize(traj.states.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        result.output.amplitude[i] = coupling * traj.states[i](kE, kG);
        const double t = traj.times[i];
        if (t >= seq.write_end() && t <= seq.read_start())
            peak = std::max(peak, std::abs(traj.states[i](kS, kG)));
    }
    result.spin_wave_peak = peak;

    double read_energy = 0.0;
    for (std::size_t i = 1; i < traj.times.size(); ++i) {
        if (traj.times[i - 1] < seq.read_start()) continue;
        const double dt = traj.times[i] - traj.times[i - 1];
        read_energy += 0.5 * dt * (std::norm(result.output.amplitude[i]) +
                                   std::norm(result.output.amplitude[i - 1]));
    }
    result.retrieval_efficiency = read_energy / input.energy();
    return result;
}

double diode_contrast(const StorageResult& forward, const StorageResult& backward) {
    if (forward.retrieval_efficiency <= 0.0)
        throw std::invalid_argument("diode_contrast: forward efficiency must be > 0");
    const double floor = 1e-12;
    return 10.0 * std::log10(forward.retrieval_efficiency /
                             std::max(backward.retrieval_efficiency, floor));
}

void waveform_to_csv(std::ostream& os, const SignalWaveform& w) {
    os << "time_ns,re_amp,im_amp,abs2\n";
    for (std::size_t i = 0; i < w.time.size(); ++i) {
        os << format_number(units::gamma_time_to_ns(w.time[i])) << ','
           << format_number(w.amplitude[i].real()) << ','
           << format_number(w.amplitude[i].imag()) << ','
           << format_number(std::norm(w.amplitude[i])) << '\n';
    }
}

SignalWaveform waveform_from_csv(std::istream& is) {
    SignalWaveform w;
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("waveform_from_csv: empty stream");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        double vals[3] = {0.0, 0.0, 0.0};
        for (double& v : vals) {
            if (!std::getline(row, cell, ','))
                throw std::invalid_argument("waveform_from_csv: malformed row '" + line + "'");
            v = std::stod(cell);
        }
        w.time.push_back(units::ns_to_gamma_time(vals[0]));
        w.amplitude.emplace_back(vals[1], vals[2]);
    }
    return w;
}

} // namespace qroute
