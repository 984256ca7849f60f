#pragma once

#include <cstdint>
#include <vector>

#include "qmac/gaussian.hpp"

namespace qmac {

/// Probability table over photon-count pairs (n1, n2) on the rectangular
/// grid [0..rows-1] x [0..cols-1]; truncated mass is reported, never
/// renormalized away.
struct JointCountDistribution {
    int rows = 0;
    int cols = 0;
    std::vector<double> p;  // row-major
    double mass_deficit = 0.0;
    std::uint32_t message = 0;  // conditioning label (BPSK bitmask)

    double& at(int n1, int n2) { return p[std::size_t(n1) * cols + n2]; }
    double at(int n1, int n2) const { return p[std::size_t(n1) * cols + n2]; }
    double mass() const;
    /// Mean and covariance of the count pair.
    void moments(double mean[2], double cov[3]) const;  // cov = {v11, v22, v12}
};

/// Joint photon-count distribution of a zero-mean two-mode Gaussian state
/// whose quadrature covariance is diag-symmetric with per-mode variances
/// E, S and cross term C on both q and p:
///
///   [[E,0,C,0],[0,E,0,C],[C,0,S,0],[0,C,0,S]]
///
/// Evaluated by inverting the count generating function
/// 1 / [(1 + w1 a)(1 + w2 s) - w1 w2 kappa], a=(E-1)/2, s=(S-1)/2,
/// kappa=C^2/4, w=1-z, which reproduces the closed-form regularized
/// hypergeometric series and extends it where that series diverges
/// (kappa > a s, the squeezed-correlation side).  The grid grows until the
/// captured mass reaches 1 - 1e-10.
JointCountDistribution joint_counts_gaussian(double e_var, double s_var, double c_cross);

/// Same distribution extracted from a two-mode state; validates the
/// covariance has the required form (zero mean, equal q/p variances,
/// symmetric cross block) within `form_tol`.
JointCountDistribution joint_counts_from_state(const GaussianState& st,
                                               double form_tol = 1e-9);

/// Distribution of per-arm total counts over n_r independent copies,
/// computed by raising the per-copy generating function (sampled on a 2-D
/// unit-circle grid via FFT) to the n_r-th power and inverting.  The grid
/// covers the total mean plus eight standard deviations per arm.
JointCountDistribution total_counts_over_copies(const JointCountDistribution& per_copy,
                                                long n_r);

/// Conditional Shannon mutual information I(M[J]; counts | M[J^c]) in bits
/// for BPSK message-conditioned count tables.  per_message[m] is indexed by
/// the message bitmask over `senders` bits; priors default to 1/2 per bit.
double discrete_conditional_mi(const std::vector<JointCountDistribution>& per_message,
                               std::uint32_t subset_mask, int senders,
                               const std::vector<double>& bit_one_priors = {});

}  // namespace qmac
