#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qmac {

/// Entropy of a thermal state with mean photon number x, in bits:
/// g(x) = (x+1)log2(x+1) - x log2(x), with g(0) = 0.
double thermal_entropy_bits(double mean_photons);

/// g(base + delta) - g(base), evaluated without cancellation for
/// |delta| << base (the regime of weak signals on bright backgrounds).
double thermal_entropy_increment_bits(double base, double delta);

/// Complex second moments <a_i^dag a_j> (Hermitian) and <a_i a_j> (symmetric)
/// of a zero-mean Gaussian state over a set of modes.
struct ComplexMoments {
    Eigen::MatrixXcd number;  // number[i][j] = <a_i^dag a_j>
    Eigen::MatrixXcd pair;    // pair[i][j]   = <a_i a_j>

    Eigen::Index modes() const { return number.rows(); }
    void validate(double tol = 1e-9) const;
};

/// Multimode Gaussian state in quadrature form.
///
/// Quadrature ordering is (q1, p1, ..., qM, pM) with q = a + a^dag,
/// p = -i(a - a^dag); the vacuum has unit variance on every quadrature.
class GaussianState {
  public:
    GaussianState() = default;

    /// Vacuum state of `modes` modes.
    explicit GaussianState(int modes);

    GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

    int modes() const { return static_cast<int>(cov_.rows() / 2); }
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& cov() const { return cov_; }

    /// State restricted to the given modes (partial trace over the rest).
    GaussianState reduced(const std::vector<int>& modes) const;

    /// Williamson spectrum: moduli of the eigenvalues of i*Omega*cov,
    /// ascending, clamped to >= 1.  Throws physicality_error if any value
    /// falls below 1 - 1e-6.
    std::vector<double> symplectic_eigenvalues() const;

    /// Von Neumann entropy (bits) of the reduced state on `modes`.
    double entropy_bits(const std::vector<int>& modes) const;

    /// Von Neumann entropy (bits) of the whole state.
    double entropy_bits() const;

    /// Complex second moments of all modes; requires zero mean for the
    /// pair block to be meaningful as stated (mean is ignored).
    ComplexMoments complex_moments() const;

    /// Mean photon number of one mode.
    double mean_photons(int mode) const;

    double max_abs_mean() const;

  private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
};

/// Quadrature covariance of a zero-mean state from its complex moments
/// (the 2x2-block transform q = a + a^dag, p = -i(a - a^dag)).
GaussianState state_from_complex_moments(const ComplexMoments& m);

/// Standard symplectic form for M modes in (q1,p1,...) ordering.
Eigen::MatrixXd symplectic_form(int modes);

}  // namespace qmac
