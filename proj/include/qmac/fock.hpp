#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qmac/circuit.hpp"
#include "qmac/gaussian.hpp"

namespace qmac {

/// Truncated-Fock pure-state simulator.  Gates are built by exponentiating
/// ladder-operator generators on the two-mode subspace, so the engine shares
/// no code with the Gaussian covariance path and serves as its oracle.
///
/// Mixed inputs (thermal modes, loss environments) are purified: a thermal
/// mode is one half of a two-mode squeezed pair, so the simulator state
/// stays a vector.
class FockSim {
  public:
    int modes() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }

    /// Appends a vacuum mode with the given Fock-space dimension.
    int add_mode(int dim);

    /// Appends a thermal mode of the given mean photon number together with
    /// its purifier; returns the index of the thermal mode itself.
    int add_thermal_purified(double mean_photons, int dim);

    void beamsplitter(double eta, int mode_a, int mode_b);
    void phase_shift(double theta, int mode);
    void opa(double gain, int mode_a, int mode_b);

    ComplexMoments moments(const std::vector<int>& modes) const;
    Eigen::MatrixXd joint_counts(int mode_a, int mode_b) const;
    std::vector<double> counts(int mode) const;
    double entropy_bits(const std::vector<int>& modes) const;

    /// Norm loss plus occupation of the top Fock level of every mode; an
    /// estimate of how much probability the truncation has corrupted.
    double trace_deficit() const;

  private:
    void apply_two_mode(const Eigen::MatrixXcd& u, int mode_a, int mode_b);
    long stride(int mode) const;

    std::vector<int> dims_;
    Eigen::VectorXcd psi_ = Eigen::VectorXcd::Ones(1);
};

/// Runs a Gaussian-engine circuit description in the truncated Fock basis.
/// AddVacuum/AddThermal modes get dimension `cutoff`; loss environments are
/// sized automatically from their mean occupation.  Discard is tracked by
/// index remapping (discarded modes stay in the simulator but drop out of
/// the logical numbering used by the accessors).
class FockOracle {
  public:
    FockOracle(const std::vector<CircuitElement>& circuit, int cutoff);

    int logical_modes() const { return static_cast<int>(map_.size()); }
    ComplexMoments moments(const std::vector<int>& modes) const;
    Eigen::MatrixXd joint_counts(int mode_a, int mode_b) const;
    std::vector<double> counts(int mode) const;
    double entropy_bits(const std::vector<int>& modes) const;
    double trace_deficit() const { return sim_.trace_deficit(); }

  private:
    std::vector<int> remap(const std::vector<int>& modes) const;

    FockSim sim_;
    std::vector<int> map_;  // logical mode -> simulator mode
};

}  // namespace qmac
