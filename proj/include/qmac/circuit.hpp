#pragma once

#include <variant>
#include <vector>

#include "qmac/gaussian.hpp"

namespace qmac {

// Optical circuit elements.  Beamsplitter convention (rotation, det +1):
//   out_i = sqrt(eta) a_i + sqrt(1-eta) a_j
//   out_j = -sqrt(1-eta) a_i + sqrt(eta) a_j
// Two-mode squeezer (OPA) with gain G >= 1:
//   out_i = sqrt(G) a_i + sqrt(G-1) a_j^dag   (and i <-> j)
// Loss admixes a thermal environment with mean N_B/(1-tau) so the output
// carries exactly N_B added photons.
struct Beamsplitter {
    double eta;
    int mode_a;
    int mode_b;
};
struct PhaseShift {
    double theta;
    int mode;
};
struct Opa {
    double gain;
    int mode_a;
    int mode_b;
};
struct Loss {
    double tau;
    double n_b;
    int mode;
};
struct AddVacuum {};
struct AddThermal {
    double mean_photons;
};
struct Discard {
    int mode;
};

using CircuitElement =
    std::variant<Beamsplitter, PhaseShift, Opa, Loss, AddVacuum, AddThermal, Discard>;

GaussianState apply_element(const GaussianState& state, const CircuitElement& elem);
GaussianState apply_circuit(const GaussianState& state, const std::vector<CircuitElement>& circuit);

/// Two-mode squeezed vacuum with per-mode mean photon number n_s and
/// photon-number correlation sqrt(n_s(n_s+1)); modes (signal, idler).
GaussianState tmsv_source(double n_s);

/// Channel and source parameters of the thermal-loss multiple-access setup.
struct MacScenario {
    std::vector<double> eta;  // mixing weights, nonnegative, sum to 1
    double tau = 1.0;         // transmissivity of the loss channel
    double n_b = 0.0;         // mean thermal photons added at the output
    std::vector<double> n_s;  // per-sender source brightness

    int senders() const { return static_cast<int>(eta.size()); }
    void validate() const;
};

/// Beamsplitter cascade combining modes `modes[0..s-1]` (in an existing
/// state) into modes[0] with amplitude weights sqrt(weights[k]).
std::vector<CircuitElement> mixing_cascade(const std::vector<double>& weights,
                                           const std::vector<int>& modes);

/// Joint state of the received mode and all idlers after phase encoding,
/// mixing, and the thermal-loss channel.  Mode order: (B, A'_1, ..., A'_s).
GaussianState mac_output_state(const MacScenario& scn, const std::vector<double>& phases);

/// Full element list realizing mac_output_state starting from zero modes.
/// Mode layout while running: signals 0..s-1, idlers s..2s-1; after the
/// final discards the remaining modes are (B, A'_1..A'_s).
std::vector<CircuitElement> mac_output_circuit(const MacScenario& scn,
                                               const std::vector<double>& phases);

}  // namespace qmac
