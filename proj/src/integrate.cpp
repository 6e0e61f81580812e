#include "qroute/integrate.hpp"

#include <cmath>
#include <limits>

namespace qroute {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b(5th) - b(4th), for the embedded error estimate.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

class Stepper {
public:
    Stepper(const TimeDependentLiouvillian& liouvillian, const EvolveOptions& opts)
        : liouvillian_(liouvillian), opts_(opts) {}

    Vector rhs(double t, const Vector& y) const { return liouvillian_(t) * y; }

    // One accepted step from (t, y); h is adjusted in place. Returns new t.
    double step(double t, Vector& y, double& h, double t_limit) {
        const double hmin = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0);
        for (;;) {
            if (h < hmin)
                throw IntegrationError("evolve: step size underflow at t = " + std::to_string(t), t);
            bool clipped = false;
            double hs = h;
            if (t + hs > t_limit) { hs = t_limit - t; clipped = true; }

            const Vector k1 = rhs(t, y);
            const Vector k2 = rhs(t + c2 * hs, y + hs * (a21 * k1));
            const Vector k3 = rhs(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
            const Vector k4 = rhs(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
            const Vector k5 = rhs(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Vector k6 = rhs(t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            Vector y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Vector k7 = rhs(t + hs, y_new);
            const Vector err_vec =
                hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            double err = 0.0;
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                const double sc = opts_.abs_tol +
                                  opts_.rel_tol * std::max(std::abs(y(i)), std::abs(y_new(i)));
                const double q = std::abs(err_vec(i)) / sc;
                err += q * q;
            }
            err = std::sqrt(err / static_cast<double>(y.size()));

            // PI controller (Hairer dopri5 constants).
            const double expo1 = 0.2 - kBeta * 0.75;
            const double fac11 = std::pow(std::max(err, 1e-16), expo1);
            if (err <= 1.0) {
                double fac = fac11 / std::pow(fac_old_, kBeta);
                fac = std::max(kInvFacMax, std::min(kInvFacMin, fac / kSafe));
                fac_old_ = std::max(err, 1e-4);
                const double t_new = clipped ? t_limit : t + hs;
                if (!clipped) h = hs / fac;
                y.swap(y_new);
                return t_new;
            }
            h = hs / std::min(kInvFacMin, fac11 / kSafe);
        }
    }

private:
    static constexpr double kBeta = 0.04;
    static constexpr double kSafe = 0.9;
    static constexpr double kInvFacMax = 0.1;  // 1 / facmax
    static constexpr double kInvFacMin = 5.0;  // 1 / facmin
    const TimeDependentLiouvillian& liouvillian_;
    EvolveOptions opts_;
    double fac_old_ = 1e-4;
};

} // namespace

Trajectory evolve(const DensityMatrix& rho0, const TimeDependentLiouvillian& liouvillian,
                  const std::vector<double>& grid, const EvolveOptions& opts) {
    if (grid.empty())
        throw std::invalid_argument("evolve: empty time grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw std::invalid_argument("evolve: grid must be strictly increasing");

    const Eigen::Index dim = rho0.dim();
    Trajectory traj;
    traj.times = grid;
    traj.states.reserve(grid.size());

    Vector y = vec(rho0.mat);
    double t = grid.front();
    traj.states.push_back(rho0.mat);

    Stepper stepper(liouvillian, opts);
    double h = std::min(0.01, (grid.back() - grid.front()) / 100.0);

    for (std::size_t g = 1; g < grid.size(); ++g) {
        const double t_target = grid[g];
        while (t < t_target)
            t = stepper.step(t, y, h, t_target);
        traj.states.push_back(unvec(y, dim));
    }
    return traj;
}

Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& liouvillian,
                  const std::vector<double>& grid, const EvolveOptions& opts) {
    return evolve(rho0, [&liouvillian](double) { return liouvillian.matrix; }, grid, opts);
}

} // namespace qroute
