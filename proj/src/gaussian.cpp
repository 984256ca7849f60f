#include "qmac/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "qmac/errors.hpp"

namespace qmac {

namespace {
constexpr double kSymplecticTol = 1e-6;   // reject nu below 1 - this
constexpr double kSymmetryTol = 1e-12;
}  // namespace

double thermal_entropy_bits(double x) {
    if (x < 0.0) {
        if (x > -1e-15) return 0.0;
        throw validation_error("thermal_entropy_bits: negative mean photon number");
    }
    if (x == 0.0) return 0.0;
    if (x < 1e-15) return x * (1.0 - std::log(x)) / M_LN2;  // leading series term
    return ((x + 1.0) * std::log1p(x) - x * std::log(x)) / M_LN2;
}

double thermal_entropy_increment_bits(double base, double delta) {
    if (base < 0.0 || base + delta < 0.0)
        throw validation_error("thermal_entropy_increment_bits: negative argument");
    if (delta == 0.0) return 0.0;
    if (base == 0.0) return thermal_entropy_bits(delta);
    if (base + delta < 1e-300) return -thermal_entropy_bits(base);
    // (x+1+d)ln(x+1+d) - (x+1)ln(x+1) = (x+1)ln1p(d/(x+1)) + d ln(x+1+d)
    const double up = (base + 1.0) * std::log1p(delta / (base + 1.0)) +
                      delta * std::log(base + delta + 1.0);
    const double down =
        base * std::log1p(delta / base) + delta * std::log(base + delta);
    return (up - down) / M_LN2;
}

void ComplexMoments::validate(double tol) const {
    const auto m = modes();
    if (pair.rows() != m || pair.cols() != m || number.cols() != m)
        throw validation_error("ComplexMoments: inconsistent matrix shapes");
    if ((number - number.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw validation_error("ComplexMoments: number block is not Hermitian");
    if ((pair - pair.transpose()).cwiseAbs().maxCoeff() > tol)
        throw validation_error("ComplexMoments: pair block is not symmetric");
    for (Eigen::Index i = 0; i < m; ++i)
        if (number(i, i).real() < -tol)
            throw physicality_error("ComplexMoments: negative mode occupation");
}

GaussianState::GaussianState(int modes) {
    if (modes < 0) throw validation_error("GaussianState: negative mode count");
    mean_ = Eigen::VectorXd::Zero(2 * modes);
    cov_ = Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
}

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (cov_.rows() != cov_.cols() || cov_.rows() % 2 != 0)
        throw validation_error("GaussianState: covariance must be square 2M x 2M");
    if (mean_.size() != cov_.rows())
        throw validation_error("GaussianState: mean/covariance size mismatch");
    const double scale = cov_.size() > 0 ? std::max(1.0, cov_.cwiseAbs().maxCoeff()) : 1.0;
    if (cov_.size() > 0 &&
        (cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale)
        throw validation_error("GaussianState: covariance not symmetric");
    cov_ = 0.5 * (cov_ + cov_.transpose().eval());
}

GaussianState GaussianState::reduced(const std::vector<int>& modes) const {
    if (modes.empty()) throw validation_error("reduced: empty mode subset");
    const int m = this->modes();
    Eigen::VectorXi idx(2 * static_cast<int>(modes.size()));
    for (size_t k = 0; k < modes.size(); ++k) {
        if (modes[k] < 0 || modes[k] >= m)
            throw validation_error("reduced: mode index out of range");
        idx(2 * k) = 2 * modes[k];
        idx(2 * k + 1) = 2 * modes[k] + 1;
    }
    GaussianState out;
    out.mean_ = mean_(idx);
    out.cov_ = cov_(idx, idx);
    return out;
}

Eigen::MatrixXd symplectic_form(int modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
    for (int k = 0; k < modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

std::vector<double> GaussianState::symplectic_eigenvalues() const {
    const int m = modes();
    if (m == 0) return {};
    Eigen::MatrixXd k = symplectic_form(m) * cov_;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(k, /*computeEigenvectors=*/false);
    std::vector<double> mods(2 * m);
    for (int i = 0; i < 2 * m; ++i) mods[i] = std::abs(solver.eigenvalues()(i));
    std::sort(mods.begin(), mods.end());
    std::vector<double> nus(m);
    for (int i = 0; i < m; ++i) {
        const double nu = 0.5 * (mods[2 * i] + mods[2 * i + 1]);
        if (nu < 1.0 - kSymplecticTol)
            throw physicality_error("symplectic eigenvalue below vacuum limit: nu = " +
                                    std::to_string(nu));
        nus[i] = std::max(nu, 1.0);
    }
    return nus;
}

double GaussianState::entropy_bits(const std::vector<int>& modes) const {
    return reduced(modes).entropy_bits();
}

double GaussianState::entropy_bits() const {
    double s = 0.0;
    for (double nu : symplectic_eigenvalues()) s += thermal_entropy_bits(0.5 * (nu - 1.0));
    return s;
}

ComplexMoments GaussianState::complex_moments() const {
    const int m = modes();
    ComplexMoments out;
    out.number.resize(m, m);
    out.pair.resize(m, m);
    const std::complex<double> iu(0.0, 1.0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double qq = cov_(2 * i, 2 * j);
            const double pp = cov_(2 * i + 1, 2 * j + 1);
            const double qp = cov_(2 * i, 2 * j + 1);
            const double pq = cov_(2 * i + 1, 2 * j);
            out.number(i, j) = 0.25 * (qq + pp + iu * (qp - pq)) - (i == j ? 0.5 : 0.0);
            out.pair(i, j) = 0.25 * (qq - pp + iu * (qp + pq));
        }
    }
    return out;
}

double GaussianState::mean_photons(int mode) const {
    if (mode < 0 || mode >= modes()) throw validation_error("mean_photons: bad mode index");
    const double q = mean_(2 * mode), p = mean_(2 * mode + 1);
    return 0.25 * (cov_(2 * mode, 2 * mode) + cov_(2 * mode + 1, 2 * mode + 1) - 2.0) +
           0.25 * (q * q + p * p);
}

double GaussianState::max_abs_mean() const {
    return mean_.size() == 0 ? 0.0 : mean_.cwiseAbs().maxCoeff();
}

GaussianState state_from_complex_moments(const ComplexMoments& m) {
    m.validate();
    const int n = static_cast<int>(m.modes());
    Eigen::MatrixXd cov(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::complex<double> num = m.number(i, j);
            const std::complex<double> pr = m.pair(i, j);
            const double delta = (i == j) ? 1.0 : 0.0;
            cov(2 * i, 2 * j) = 2.0 * pr.real() + 2.0 * num.real() + delta;
            cov(2 * i + 1, 2 * j + 1) = -2.0 * pr.real() + 2.0 * num.real() + delta;
            cov(2 * i, 2 * j + 1) = 2.0 * pr.imag() + 2.0 * num.imag();
            cov(2 * i + 1, 2 * j) = 2.0 * pr.imag() - 2.0 * num.imag();
        }
    }
    return GaussianState(Eigen::VectorXd::Zero(2 * n), cov);
}

}  // namespace qmac
