#include "qroute/tomography.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace qroute::tomo {

namespace {

using nlohmann::json;

// splitmix64, used to derive independent per-basis stream seeds.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double probability(const DensityMatrix& rho, Basis b) {
    const Eigen::Vector2cd v = basis_vector(b);
    const double p = std::real((v.adjoint() * rho.mat * v)(0, 0));
    return std::clamp(p, 0.0, 1.0);
}

void require_all_bases(const std::vector<MeasurementRecord>& records) {
    for (Basis b : kAllBases) {
        const bool found = std::any_of(records.begin(), records.end(),
                                       [b](const MeasurementRecord& r) { return r.basis == b; });
        if (!found)
            throw std::invalid_argument(std::string("tomography: missing basis ") + basis_name(b));
    }
    for (const auto& r : records) {
        if (r.shots <= 0) throw std::invalid_argument("tomography: shots must be > 0");
        if (r.counts < 0 || r.counts > r.shots)
            throw std::invalid_argument("tomography: counts must lie in [0, shots]");
    }
}

// Cholesky-style parameterization: L = [[t0, 0], [t2 + i t3, t1]],
// rho(t) = L^dag L / Tr(L^dag L).
struct CholeskyParam {
    std::array<double, 4> t{1.0, 1.0, 0.0, 0.0};

    Matrix unnormalized() const {
        Matrix a(2, 2);
        const Complex c{t[2], t[3]};
        a(0, 0) = t[0] * t[0] + std::norm(c);
        a(0, 1) = std::conj(c) * t[1];
        a(1, 0) = t[1] * c;
        a(1, 1) = t[1] * t[1];
        return a;
    }

    Matrix rho() const {
        const Matrix a = unnormalized();
        return a / a.trace();
    }

    void normalize() {
        const double n = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2] + t[3] * t[3]);
        if (n > 0.0)
            for (double& x : t) x /= n;
    }
};

double safe_log(double p) { return std::log(std::max(p, 1e-300)); }

double likelihood_of(const std::vector<MeasurementRecord>& records, const Matrix& rho) {
    double ll = 0.0;
    for (const auto& r : records) {
        const Eigen::Vector2cd v = basis_vector(r.basis);
        const double p = std::clamp(std::real((v.adjoint() * rho * v)(0, 0)), 0.0, 1.0);
        if (r.counts > 0) ll += static_cast<double>(r.counts) * safe_log(p);
        if (r.counts < r.shots)
            ll += static_cast<double>(r.shots - r.counts) * safe_log(1.0 - p);
    }
    return ll;
}

std::array<double, 4> likelihood_gradient(const std::vector<MeasurementRecord>& records,
                                          const CholeskyParam& param) {
    const Matrix a = param.unnormalized();
    const double tau = std::real(a.trace());
    const Matrix rho = a / tau;

    // dA/dt_k = dL_k^dag L + L^dag dL_k with dL in {E00, E11, E10, iE10}.
    Matrix l(2, 2);
    l << param.t[0], 0.0, Complex{param.t[2], param.t[3]}, param.t[1];
    std::array<Matrix, 4> dl;
    dl.fill(Matrix::Zero(2, 2));
    dl[0](0, 0) = 1.0;
    dl[1](1, 1) = 1.0;
    dl[2](1, 0) = 1.0;
    dl[3](1, 0) = kI;

    std::array<double, 4> grad{0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < 4; ++k) {
        const Matrix da = dl[k].adjoint() * l + l.adjoint() * dl[k];
        const double dtau = std::real(da.trace());
        const Matrix drho = da / tau - rho * (dtau / tau);
        for (const auto& r : records) {
            const Eigen::Vector2cd v = basis_vector(r.basis);
            const double p = std::clamp(std::real((v.adjoint() * rho * v)(0, 0)), 0.0, 1.0);
            const double dp = std::real((v.adjoint() * drho * v)(0, 0));
            double w = 0.0;
            if (r.counts > 0) w += static_cast<double>(r.counts) / std::max(p, 1e-12);
            if (r.counts < r.shots)
                w -= static_cast<double>(r.shots - r.counts) / std::max(1.0 - p, 1e-12);
            grad[k] += w * dp;
        }
    }
    return grad;
}

CholeskyParam param_from_state(const Matrix& rho) {
    // Clamp eigenvalues away from zero, then read the parameters off the
    // Schur-complement factorization.
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    Eigen::Vector2d vals = es.eigenvalues().cwiseMax(1e-6);
    Matrix fixed = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
    fixed /= fixed.trace();

    CholeskyParam param;
    param.t[1] = std::sqrt(std::max(std::real(fixed(1, 1)), 1e-8));
    const Complex c = fixed(1, 0) / param.t[1];
    param.t[2] = c.real();
    param.t[3] = c.imag();
    param.t[0] = std::sqrt(std::max(std::real(fixed(0, 0)) - std::norm(c), 1e-8));
    param.normalize();
    return param;
}

} // namespace

Eigen::Vector2cd basis_vector(Basis b) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (b) {
        case Basis::H: return {1.0, 0.0};
        case Basis::V: return {0.0, 1.0};
        case Basis::D: return {s, s};
        case Basis::A: return {s, -s};
        case Basis::R: return {s, s * kI};
        case Basis::L: return {s, -s * kI};
    }
    throw std::invalid_argument("basis_vector: unknown basis");
}

const char* basis_name(Basis b) {
    switch (b) {
        case Basis::H: return "H";
        case Basis::V: return "V";
        case Basis::D: return "D";
        case Basis::A: return "A";
        case Basis::R: return "R";
        case Basis::L: return "L";
    }
    return "?";
}

Basis basis_from_name(const std::string& name) {
    for (Basis b : kAllBases)
        if (name == basis_name(b)) return b;
    throw std::invalid_argument("basis_from_name: unknown basis '" + name + "'");
}

std::vector<MeasurementRecord> simulate_counts(const DensityMatrix& rho, std::int64_t shots,
                                               std::uint64_t seed) {
    if (shots <= 0) throw std::invalid_argument("simulate_counts: shots must be > 0");
    if (rho.dim() != 2) throw std::invalid_argument("simulate_counts: expected a 2x2 state");

    std::vector<MeasurementRecord> records;
    records.reserve(6);
    std::uint64_t idx = 0;
    for (Basis b : kAllBases) {
        const double p = probability(rho, b);
        std::mt19937_64 rng(mix(seed ^ mix(idx++)));
        std::binomial_distribution<std::int64_t> dist(shots, p);
        records.push_back({b, dist(rng), shots});
    }
    return records;
}

LinearInversionResult linear_inversion(const std::vector<MeasurementRecord>& records) {
    require_all_bases(records);

    auto freq = [&records](Basis b) {
        double num = 0.0, den = 0.0;
        for (const auto& r : records)
            if (r.basis == b) {
                num += static_cast<double>(r.counts);
                den += static_cast<double>(r.shots);
            }
        return num / den;
    };

    const double sx = freq(Basis::D) - freq(Basis::A);
    const double sy = freq(Basis::R) - freq(Basis::L);
    const double sz = freq(Basis::H) - freq(Basis::V);

    Matrix rho(2, 2);
    rho << 0.5 * (1.0 + sz), 0.5 * Complex{sx, -sy},
           0.5 * Complex{sx, sy}, 0.5 * (1.0 - sz);

    LinearInversionResult out{std::move(rho), true};
    out.physical = min_eigenvalue(out.rho) >= -1e-12;
    return out;
}

double log_likelihood(const std::vector<MeasurementRecord>& records, const DensityMatrix& rho) {
    return likelihood_of(records, rho.mat);
}

ReconstructionResult mle_reconstruct(const std::vector<MeasurementRecord>& records,
                                     double tol, int max_iter) {
    require_all_bases(records);
    if (tol <= 0.0) throw std::invalid_argument("mle_reconstruct: tol must be > 0");

    CholeskyParam param = param_from_state(linear_inversion(records).rho);
    double ll = likelihood_of(records, param.rho());

    double step = 1e-3;
    int iter = 0;
    bool converged = false;
    for (; iter < max_iter; ++iter) {
        const auto grad = likelihood_gradient(records, param);
        const double gnorm = std::sqrt(grad[0] * grad[0] + grad[1] * grad[1] +
                                       grad[2] * grad[2] + grad[3] * grad[3]);
        if (gnorm < tol) {
            converged = true;
            break;
        }

        // Backtracking ascent along the gradient; likelihood never decreases.
        step *= 2.0;
        bool accepted = false;
        while (step > 1e-18) {
            CholeskyParam trial = param;
            for (int k = 0; k < 4; ++k) trial.t[k] += step * grad[k] / gnorm;
            trial.normalize();
            const double trial_ll = likelihood_of(records, trial.rho());
            if (trial_ll >= ll) {
                param = trial;
                ll = trial_ll;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // stuck at numerical precision
    }

    ReconstructionResult res{make_density_matrix(param.rho()), ll, iter, converged};
    return res;
}

std::string records_to_json(const std::vector<MeasurementRecord>& records) {
    json arr = json::array();
    for (const auto& r : records)
        arr.push_back({{"basis", basis_name(r.basis)}, {"counts", r.counts}, {"shots", r.shots}});
    return arr.dump();
}

std::vector<MeasurementRecord> records_from_json(const std::string& text) {
    const json arr = json::parse(text);
    if (!arr.is_array()) throw std::invalid_argument("records_from_json: expected an array");
    std::vector<MeasurementRecord> records;
    for (const auto& item : arr) {
        MeasurementRecord r;
        r.basis = basis_from_name(item.at("basis").get<std::string>());
        r.counts = item.at("counts").get<std::int64_t>();
        r.shots = item.at("shots").get<std::int64_t>();
        records.push_back(r);
    }
    return records;
}

std::string density_to_json(const DensityMatrix& rho) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < rho.dim(); ++i) {
        json re_row = json::array(), im_row = json::array();
        for (Eigen::Index j = 0; j < rho.dim(); ++j) {
            re_row.push_back(rho.mat(i, j).real());
            im_row.push_back(rho.mat(i, j).imag());
        }
        re.push_back(re_row);
        im.push_back(im_row);
    }
    return json{{"re", re}, {"im", im}}.dump();
}

DensityMatrix density_from_json(const std::string& text) {
    const json obj = json::parse(text);
    const auto& re = obj.at("re");
    const auto& im = obj.at("im");
    const auto n = static_cast<Eigen::Index>(re.size());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = Complex{re.at(i).at(j).get<double>(), im.at(i).at(j).get<double>()};
    return make_density_matrix(m);
}

} // namespace qroute::tomo
