#pragma once

#include <string>
#include <vector>

#include "qmac/circuit.hpp"
#include "qmac/counts.hpp"
#include "qmac/rate_region.hpp"
#include "qmac/wick.hpp"

namespace qmac {

enum class ReceiverKind {
    serial_opa,          // cascaded OPAs on the received mode, idler arms counted
    serial_conjugate,    // cascaded phase conjugation + balanced arms
    parallel_opa,        // received mode sliced, one OPA per sender
    parallel_conjugate,  // one conjugator, sliced, balanced arms
};

enum class StatsMethod { exact_counts, gaussian };

ReceiverKind receiver_kind_from_string(const std::string& name);
std::string receiver_kind_name(ReceiverKind kind);
bool is_conjugate_kind(ReceiverKind kind);

struct ReceiverConfig {
    ReceiverKind kind = ReceiverKind::serial_conjugate;
    std::vector<double> gains;   // per sender; parallel conjugate uses gains[0]
    long n_r = 1;                // repetition count (modes per codeword)
    std::vector<double> split;   // parallel tap ratios; defaults to scenario eta
    StatsMethod stats = StatsMethod::gaussian;
};

/// Gain choices: OPA receivers use G_k = 1 + sqrt(N_S,k / (N_B (1+N_B)));
/// conjugate receivers saturate once (G-1) N_B >> N_S,k, with G = 2 at
/// N_B = 20 and G = 1 + 1e-3 at N_B = 1e4 (the operating points quoted for
/// those noise levels), else (G-1) = 100 N_S,k / N_B.
std::vector<double> default_gains(ReceiverKind kind, const MacScenario& scn);

/// State of the photodetected modes for one message (bit k of
/// `message_bits` selects the BPSK phase pi of sender k).  OPA kinds
/// detect s count arms in sender order; conjugate kinds detect 2s arms
/// ordered (X1, Y1, ..., Xs, Ys).
GaussianState receiver_front_end(ReceiverKind kind, const MacScenario& scn,
                                 const ReceiverConfig& cfg, std::uint32_t message_bits);

/// Per-mode rate region of a receiver: bounds[J] = I(M[J]; outcome | M[J^c]) / n_r
/// over all 2^s - 1 subsets.  Exact count statistics are available for the
/// OPA kinds at s = 2; conjugate kinds always use the Gaussian model.
RateRegion receiver_rate_region(ReceiverKind kind, const MacScenario& scn,
                                const ReceiverConfig& cfg);

}  // namespace qmac
