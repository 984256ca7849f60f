#pragma once

#include "qmac/circuit.hpp"
#include "qmac/rate_region.hpp"

namespace qmac {

/// Coherent-state rate region: bounds[J] = g(sum_{i in J} tau eta_i N_S,i + N_B) - g(N_B).
RateRegion coherent_region(const MacScenario& scn);

/// Outer bound on all unassisted encodings: singleton bounds use the full
/// per-sender energy g(tau N_S,k + N_B) - g(N_B); the full-set bound is the
/// coherent sum bound; intermediate subsets take the tightest implied
/// combination min(sum of member singletons, full-set bound).
RateRegion classical_outer_region(const MacScenario& scn);

/// Entanglement-assisted classical capacity of a single-sender thermal-loss
/// channel with transmissivity tau, output noise n_b and signal brightness n_s.
double ea_capacity_single(double n_s, double tau, double n_b);

/// Entanglement-assisted outer bound region (per-sender and sum reductions
/// to the single-sender capacity; intermediate subsets as in the classical
/// outer region).
RateRegion ea_outer_region(const MacScenario& scn);

/// Rate region achieved by two-mode squeezed vacuum sources with one bound
/// per subset J: the conditional mutual information I(A'[J]; B | A'[J^c])
/// of the channel output state.  Phases are taken at zero (the spectrum is
/// phase covariant).  Guarded at 20 senders (2^s bounds).
RateRegion tmsv_region(const MacScenario& scn);

/// Closed asymptotic form of the ratio between the single-sender EA capacity
/// and the coherent-state bound, log(1/n_s) / (eta (1+n_b) log(1+1/n_b)).
/// Both logarithms share one base, so the value is base independent (natural
/// logs are used here).
double asymptotic_capacity_ratio(double n_s, double eta, double n_b);

}  // namespace qmac
