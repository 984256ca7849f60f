#pragma once

#include <complex>

#include "qmac/circuit.hpp"
#include "qmac/gaussian.hpp"

namespace qmac {

/// Closed-form second moments of the two-sender receiver front ends,
/// written out directly from the operator algebra of the OPA chains.
/// These are independent of the circuit engine and used to cross-check it.
///
/// Conventions: eta = eta_1 (eta_2 = 1 - eta), and the phase-sensitive
/// source correlations are c_p,k = sqrt(n_s,k (n_s,k + 1)) e^{i theta_k}.

/// Detected idler-arm moments (a, s, c) of the serial OPA receiver:
/// <A1''^dag A1''> = a, <A2''^dag A2''> = s, <A1'' A2''^dag> = c.
ComplexMoments serial_opa_reference(const MacScenario& scn, double g1, double g2,
                                    std::complex<double> cp1, std::complex<double> cp2);

/// Parallel OPA receiver (received mode sliced with ratios eta, 1 - eta).
ComplexMoments parallel_opa_reference(const MacScenario& scn, double g1, double g2,
                                      std::complex<double> cp1, std::complex<double> cp2);

/// Serial phase-conjugate receiver: moments of the four detected arms
/// in the order (X1, Y1, X2, Y2) with X_k = (C_k + A_k')/sqrt(2),
/// Y_k = (A_k' - C_k)/sqrt(2).
ComplexMoments serial_conjugate_reference(const MacScenario& scn, double g1, double g2,
                                          std::complex<double> cp1,
                                          std::complex<double> cp2);

}  // namespace qmac
