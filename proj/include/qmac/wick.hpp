#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qmac/gaussian.hpp"

namespace qmac {

/// Mean and covariance of linear combinations of photon-number operators
/// of a zero-mean Gaussian state.  Each row w of `weights` describes one
/// statistic sum_m w[m] N_m; covariances come from the Wick expansion
///   Cov(N_p, N_q) = |<a_p a_q>|^2 + |<a_p^dag a_q>|^2 + delta_pq <N_p>.
struct NumberStatistics {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

NumberStatistics number_statistics(const GaussianState& state, const Eigen::MatrixXd& weights);

/// Gaussian model of the per-copy statistic vector: the mean statistic of
/// n_r i.i.d. copies is N(mean, cov / n_r).
struct GaussianObservationModel {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;  // per-copy covariance
    long copies = 1;
};

/// Difference model for paired detector arms: arm_pairs lists (X, Y) mode
/// index pairs; statistic i is N_X,i - N_Y,i.  The state must be zero-mean.
GaussianObservationModel wick_diff_model(const GaussianState& state,
                                         const std::vector<std::pair<int, int>>& arm_pairs,
                                         long n_r);

/// Count model for directly photodetected modes (statistic i = N_modes[i]).
GaussianObservationModel wick_count_model(const GaussianState& state,
                                          const std::vector<int>& modes, long n_r);

/// Conditional Shannon mutual information I(M[J]; X | M[J^c]) in bits where
/// X is the n_r-copy mean statistic with the message-conditioned Gaussian
/// models given per message bitmask.  Mixture entropies are integrated on an
/// adaptively refined grid to absolute accuracy `tol` bits.
double gaussian_conditional_mi(const std::vector<GaussianObservationModel>& per_message,
                               std::uint32_t subset_mask, int senders,
                               const std::vector<double>& bit_one_priors = {},
                               double tol = 1e-6);

/// Differential entropy (bits) of a weighted mixture of Gaussians in 1 or 2
/// dimensions, integrated to absolute accuracy `tol`.
double gaussian_mixture_entropy_bits(const std::vector<Eigen::VectorXd>& means,
                                     const std::vector<Eigen::MatrixXd>& covs,
                                     const std::vector<double>& weights, double tol = 1e-7);

}  // namespace qmac
