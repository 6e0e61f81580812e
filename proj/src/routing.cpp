#include "qroute/routing.hpp"

#include <Eigen/LU>

#include <cmath>

namespace qroute {

namespace {

enum Level : Eigen::Index { kG = 0, kS = 1, kE = 2 };

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

} // namespace

void RoutingParams::validate() const {
    if (gamma <= 0.0) throw std::invalid_argument("RoutingParams: gamma must be > 0");
    if (omega_p <= 0.0) throw std::invalid_argument("RoutingParams: omega_p must be > 0");
    if (omega_c < 0.0) throw std::invalid_argument("RoutingParams: omega_c must be >= 0");
    if (omega_diss < 0.0) throw std::invalid_argument("RoutingParams: omega_diss must be >= 0");
    if (gamma_gs < 0.0) throw std::invalid_argument("RoutingParams: gamma_gs must be >= 0");
}

void ZeemanScheme::validate() const {
    if (f_ground < 1 || f_excited < 1)
        throw std::invalid_argument("ZeemanScheme: angular momenta must be >= 1");
    if (populations.size() != 2 * f_ground + 1)
        throw std::invalid_argument("ZeemanScheme: populations size mismatch");
    if (populations.minCoeff() < 0.0)
        throw std::invalid_argument("ZeemanScheme: negative population");
    if (std::abs(populations.sum() - 1.0) > 1e-12)
        throw std::invalid_argument("ZeemanScheme: populations must sum to 1");
    if (dipole_weights.rows() != 2 * f_excited + 1 || dipole_weights.cols() != 2 * f_ground + 1)
        throw std::invalid_argument("ZeemanScheme: dipole_weights shape mismatch");
    for (int me = -f_excited; me <= f_excited; ++me)
        for (int mg = -f_ground; mg <= f_ground; ++mg)
            if (std::abs(me - mg) > 1 && weight(me, mg) != 0.0)
                throw std::invalid_argument("ZeemanScheme: dipole selection rule violated");
}

double clebsch_gordan_2j(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M) {
    if (two_m1 + two_m2 != two_M) return 0.0;
    if (two_J < std::abs(two_j1 - two_j2) || two_J > two_j1 + two_j2) return 0.0;
    if (std::abs(two_m1) > two_j1 || std::abs(two_m2) > two_j2 || std::abs(two_M) > two_J)
        return 0.0;
    // All of these are integers for physical arguments.
    auto half = [](int x) { return x / 2; };
    if ((two_j1 + two_m1) % 2 || (two_j2 + two_m2) % 2 || (two_J + two_M) % 2) return 0.0;

    const double pref =
        std::sqrt((two_J + 1.0) * factorial(half(two_J + two_j1 - two_j2)) *
                  factorial(half(two_J - two_j1 + two_j2)) *
                  factorial(half(two_j1 + two_j2 - two_J)) /
                  factorial(half(two_j1 + two_j2 + two_J) + 1)) *
        std::sqrt(factorial(half(two_J + two_M)) * factorial(half(two_J - two_M)) *
                  factorial(half(two_j1 - two_m1)) * factorial(half(two_j1 + two_m1)) *
                  factorial(half(two_j2 - two_m2)) * factorial(half(two_j2 + two_m2)));

    double sum = 0.0;
    const int k_min = std::max({0, half(two_j2 - two_J - two_m1), half(two_j1 + two_m2 - two_J)});
    const int k_max = std::min({half(two_j1 + two_j2 - two_J), half(two_j1 - two_m1),
                                half(two_j2 + two_m2)});
    for (int k = k_min; k <= k_max; ++k) {
        const double denom = factorial(k) * factorial(half(two_j1 + two_j2 - two_J) - k) *
                             factorial(half(two_j1 - two_m1) - k) *
                             factorial(half(two_j2 + two_m2) - k) *
                             factorial(half(two_J - two_j2 + two_m1) + k) *
                             factorial(half(two_J - two_j1 - two_m2) + k);
        sum += ((k % 2) ? -1.0 : 1.0) / denom;
    }
    return pref * sum;
}

ZeemanScheme make_zeeman_scheme(int f_ground, int f_excited) {
    const Eigen::VectorXd uniform =
        Eigen::VectorXd::Constant(2 * f_ground + 1, 1.0 / (2 * f_ground + 1));
    return make_zeeman_scheme(f_ground, f_excited, uniform);
}

ZeemanScheme make_zeeman_scheme(int f_ground, int f_excited,
                                const Eigen::VectorXd& populations) {
    ZeemanScheme scheme;
    scheme.f_ground = f_ground;
    scheme.f_excited = f_excited;
    scheme.populations = populations;
    scheme.dipole_weights = Eigen::MatrixXd::Zero(2 * f_excited + 1, 2 * f_ground + 1);
    for (int mg = -f_ground; mg <= f_ground; ++mg) {
        for (int q = -1; q <= 1; ++q) {
            const int me = mg + q;
            if (std::abs(me) > f_excited) continue;
            const double cg = clebsch_gordan_2j(2 * f_ground, 2 * mg, 2, 2 * q,
                                                2 * f_excited, 2 * me);
            scheme.dipole_weights(me + f_excited, mg + f_ground) = cg * cg;
        }
    }
    const double strongest = scheme.dipole_weights.maxCoeff();
    if (strongest <= 0.0)
        throw std::invalid_argument("make_zeeman_scheme: no allowed transitions");
    scheme.dipole_weights /= strongest;
    scheme.validate();
    return scheme;
}

double gamma_eff(double omega_diss, double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("gamma_eff: gamma must be > 0");
    if (omega_diss < 0.0) throw std::invalid_argument("gamma_eff: omega_diss must be >= 0");
    return omega_diss * omega_diss / gamma;
}

Complex lambda_for(Direction dir, Helicity sigma_control, const RoutingParams& params) {
    const Direction eff = effective_direction(dir, sigma_control);
    if (eff == Direction::Forward) return Complex{0.0, 0.0};
    return Complex{0.0, -0.5 * gamma_eff(params.omega_diss, params.gamma)};
}

Operator build_h_eff(const RoutingParams& params, Complex lambda) {
    params.validate();
    Operator h(3, 3);
    h << lambda, 0.0, 0.5 * params.omega_p,
         0.0, params.delta(), 0.5 * params.omega_c,
         0.5 * params.omega_p, 0.5 * params.omega_c, params.delta_p;
    return h;
}

std::vector<LindbladTerm> default_lindblad_terms(const RoutingParams& params) {
    std::vector<LindbladTerm> terms;
    terms.push_back({ketbra(kG, kE, 3), 0.5 * params.gamma});
    terms.push_back({ketbra(kS, kE, 3), 0.5 * params.gamma});
    if (params.gamma_gs > 0.0)
        terms.push_back({ketbra(kS, kS, 3), 2.0 * params.gamma_gs});
    return terms;
}

namespace {

// Linear response of the probed coherence with the ground population held at
// one: the Liouvillian's gg row is replaced by the constraint rho_gg = 1. For
// a trace-preserving generator this matches the true steady state up to
// O(Omega_p^2); for the drained (Lambda != 0) generator, which has no fixed
// point at all, it is the reservoir response the susceptibility needs.
Complex pinned_response(const RoutingParams& params, Complex lambda, double omega_p) {
    RoutingParams p = params;
    p.omega_p = omega_p;
    const Operator h = build_h_eff(p, lambda);
    const Liouvillian liou = build_liouvillian(h, default_lindblad_terms(p));

    constexpr Eigen::Index dim = 3;
    constexpr Eigen::Index idx_gg = kG * dim + kG;  // column-stacked (row g, col g)
    constexpr Eigen::Index idx_eg = kG * dim + kE;  // <e|rho|g> lives at (row e, col g)

    Matrix sys = liou.matrix;
    sys.row(idx_gg).setZero();
    sys(idx_gg, idx_gg) = 1.0;
    Vector rhs = Vector::Zero(dim * dim);
    rhs(idx_gg) = 1.0;

    Eigen::FullPivLU<Matrix> lu(sys);
    if (!lu.isInvertible()) {
        // Consistent rank-deficient systems (e.g. Omega_c = 0 leaves rho_ss
        // free) are fine as long as the probed coherence is determined.
        const Matrix kernel = lu.kernel();
        if (kernel.row(idx_eg).cwiseAbs().maxCoeff() > 1e-9)
            throw NonUniqueSteadyState("steady_coherence: probed coherence not unique");
    }
    const Vector x = lu.solve(rhs);
    if ((sys * x - rhs).norm() > 1e-8)
        throw SolverError("steady_coherence: pinned linear system inconsistent");
    return -x(idx_eg) / (0.5 * omega_p);
}

} // namespace

Complex steady_coherence(const RoutingParams& params, Complex lambda) {
    params.validate();
    if (params.omega_p > 0.1)
        throw std::invalid_argument("steady_coherence: omega_p > 0.1 leaves the weak-probe regime");
    const Complex c1 = pinned_response(params, lambda, params.omega_p);
    const Complex c2 = pinned_response(params, lambda, 0.5 * params.omega_p);
    // Responses differ from the weak-probe limit by O(Omega_p^2).
    return (4.0 * c2 - c1) / 3.0;
}

ChiralSusceptibility susceptibility(Direction dir, const ZeemanScheme& scheme,
                                    const RoutingParams& params, Helicity sigma_control) {
    scheme.validate();
    const Direction eff = effective_direction(dir, sigma_control);

    double w_norm = 0.0;  // forward sigma+ weight sum anchors the depth scale
    for (int m = -scheme.f_ground; m <= scheme.f_ground; ++m)
        w_norm += scheme.eta(m) * scheme.weight(m + 1, m);
    if (w_norm <= 0.0)
        throw std::invalid_argument("susceptibility: vanishing forward weight sum");

    const double unit = 0.5 * params.gamma / w_norm;
    const Complex f_coherent = steady_coherence(params, Complex{0.0, 0.0});

    ChiralSusceptibility chi;
    if (eff == Direction::Forward) {
        double w = 0.0;
        for (int m = -scheme.f_ground; m <= scheme.f_ground; ++m)
            w += scheme.eta(m) * scheme.weight(m + 1, m);
        chi.chi_eit = unit * w * f_coherent;
        chi.chi_loss = Complex{0.0, 0.0};
    } else {
        double w = 0.0;
        for (int m = -scheme.f_ground; m <= scheme.f_ground; ++m) {
            if (m == -scheme.f_ground && !scheme.stretch_in_eit_sum) continue;
            w += scheme.eta(m) * scheme.weight(m - 1, m);
        }
        chi.chi_eit = unit * w * f_coherent;

        const Complex lam_bw{0.0, -0.5 * gamma_eff(params.omega_diss, params.gamma)};
        const Complex f_loss = steady_coherence(params, lam_bw);
        chi.chi_loss = unit * scheme.eta(-scheme.f_ground) *
                       scheme.weight(-scheme.f_excited, -scheme.f_ground) * f_loss;
    }
    return chi;
}

TransmissionResult transmission(const ChiralSusceptibility& chi, double depth) {
    if (depth < 0.0) throw std::invalid_argument("transmission: depth must be >= 0");
    const Complex total = chi.total();
    const Complex h = std::exp(Complex{-0.5 * depth * total.imag(), 0.5 * depth * total.real()});
    return TransmissionResult{h, std::norm(h)};
}

double isolation_db(double t_forward, double t_backward, double noise_floor) {
    const double num = t_forward + noise_floor;
    const double den = t_backward + noise_floor;
    if (num <= 0.0 || den <= 0.0)
        throw std::invalid_argument("isolation_db: transmissions and noise floor are all zero");
    return 10.0 * std::log10(num / den);
}

double insertion_loss_db(double t_forward) {
    if (t_forward <= 0.0)
        throw std::invalid_argument("insertion_loss_db: transmission must be > 0");
    return -10.0 * std::log10(t_forward);
}

} // namespace qroute
