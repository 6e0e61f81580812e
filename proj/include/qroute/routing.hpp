// routing.hpp — direction-dependent atom-photon routing model.
//
// A three-level ladder of (|g>, |s>, |e>) driven by a weak probe and a chiral
// control field. The propagation direction selects the non-Hermitian term on
// the ground level: the co-helical direction is EIT-protected while the
// counter-helical one opens a dissipative channel through the stretch Zeeman
// pair, which is what makes transmission nonreciprocal.

#pragma once

#include "qroute/linalg.hpp"
#include "qroute/quantum.hpp"

#include <vector>

namespace qroute {

// All rates in units of Gamma (gamma == 1 internally).
struct RoutingParams {
    double delta_p = 0.0;      // probe detuning
    double delta_c = 0.0;      // control detuning
    double omega_p = 0.01;     // probe Rabi frequency, weak-probe regime
    double omega_c = 1.0;      // control Rabi frequency
    double omega_diss = 1.0;   // dissipative-coupling Rabi frequency
    double gamma = 1.0;        // spontaneous decay of |e>
    double gamma_gs = 1e-3;    // ground-state coherence decay

    // Two-photon detuning; derived, never stored.
    double delta() const { return delta_p - delta_c; }

    void validate() const;
};

struct Helicity {
    int value = +1;  // sigma in {+1, -1}

    explicit Helicity(int v = +1) : value(v) {
        if (v != +1 && v != -1) throw std::invalid_argument("Helicity: value must be +1 or -1");
    }
    Helicity flipped() const { return Helicity{-value}; }
};

enum class Direction { Forward, Backward };  // 1->2 (+z), 2->1 (-z)

inline Direction opposite(Direction d) {
    return d == Direction::Forward ? Direction::Backward : Direction::Forward;
}

// Reversing the control helicity exchanges which propagation direction is
// EIT-protected, so all routing quantities depend on (dir, sigma) only through
// this effective direction.
inline Direction effective_direction(Direction dir, Helicity sigma_control) {
    return sigma_control.value == +1 ? dir : opposite(dir);
}

// Zeeman structure of the probed transition F_g -> F_e. `populations` holds
// eta_m over ground sublevels m = -F_g..F_g; `dipole_weights` holds the
// squared Clebsch-Gordan factors G(m_e, m_g), normalized so the strongest
// transition has weight 1.
struct ZeemanScheme {
    int f_ground = 2;
    int f_excited = 3;
    Eigen::VectorXd populations;     // size 2*f_ground + 1
    Eigen::MatrixXd dipole_weights;  // (2*f_excited + 1) x (2*f_ground + 1)

    // Restores the printed backward sum that also counts the stretch pair
    // inside the EIT-protected terms; off by default because the pair is
    // already carried by the explicit loss term.
    bool stretch_in_eit_sum = false;

    double eta(int m_g) const { return populations(m_g + f_ground); }
    double weight(int m_e, int m_g) const {
        if (std::abs(m_e) > f_excited || std::abs(m_g) > f_ground) return 0.0;
        return dipole_weights(m_e + f_excited, m_g + f_ground);
    }

    void validate() const;
};

ZeemanScheme make_zeeman_scheme(int f_ground = 2, int f_excited = 3);
ZeemanScheme make_zeeman_scheme(int f_ground, int f_excited,
                                const Eigen::VectorXd& populations);

// <j1 m1; j2 m2 | J M>, Racah closed form. Arguments are doubled so
// half-integer momenta are exact: pass 2*j etc.
double clebsch_gordan_2j(int two_j1, int two_m1, int two_j2, int two_m2, int two_J,
                         int two_M);

struct ChiralSusceptibility {
    Complex chi_eit{0.0, 0.0};
    Complex chi_loss{0.0, 0.0};

    Complex total() const { return chi_eit + chi_loss; }
};

// gamma_eff = Omega^2 / Gamma, the rate the dissipative channel imprints on
// the ground level.
double gamma_eff(double omega_diss, double gamma);

// Lambda(dir, sigma): 0 on the EIT-protected direction, -i gamma_eff/2 on the
// dissipative one; flipping sigma swaps the two assignments exactly.
Complex lambda_for(Direction dir, Helicity sigma_control, const RoutingParams& params);

// rows/columns ordered (|g>, |s>, |e>):
//   [[Lambda, 0, Omega_p/2], [0, delta, Omega_c/2], [Omega_p/2, Omega_c/2, Delta_p]]
Operator build_h_eff(const RoutingParams& params, Complex lambda);

// Decay Gamma from |e> split equally to |g> and |s>, plus pure dephasing of
// |s> at rate 2*gamma_gs (so the g-s coherence decays at gamma_gs).
std::vector<LindbladTerm> default_lindblad_terms(const RoutingParams& params);

// Steady-state probe response of one three-level sub-system, normalized by
// (Omega_p/2) and sign-fixed so that a positive imaginary part is absorption:
// in the weak-probe limit it equals
//   i / (Gamma/2 + gamma_eff/2 + i Delta_p + (Omega_c/2)^2 / (gamma_gs + gamma_eff/2 + i delta))
// with gamma_eff = 2i*lambda. Computed from the Liouvillian with the ground
// population pinned to 1 (reservoir linear response) and Richardson-
// extrapolated Omega_p -> 0 to remove the O(Omega_p^2) saturation bias.
Complex steady_coherence(const RoutingParams& params, Complex lambda);

// Direction-resolved susceptibility. Forward: chi_loss = 0 and chi_eit is the
// population- and dipole-weighted sigma+ sum. Backward: sigma- sum plus the
// stretch-pair loss term evaluated with Lambda^bw. Weights are normalized by
// the forward sum so a control-free resonant probe sees exp(-D) transmission.
ChiralSusceptibility susceptibility(Direction dir, const ZeemanScheme& scheme,
                                    const RoutingParams& params, Helicity sigma_control);

struct TransmissionResult {
    Complex amplitude{1.0, 0.0};  // h
    double power = 1.0;           // T = |h|^2
};

// h = exp(-D Im(chi)/2 + i D Re(chi)/2): the imaginary part of chi attenuates,
// the real part winds phase. T in (0, 1] whenever Im(chi) >= 0.
TransmissionResult transmission(const ChiralSusceptibility& chi, double depth);

// 10 log10((t_forward + b) / (t_backward + b)); b is a detection noise floor.
double isolation_db(double t_forward, double t_backward, double noise_floor = 0.0);

// -10 log10(t_forward).
double insertion_loss_db(double t_forward);

} // namespace qroute
