#include "qmac/receivers.hpp"

#include <cmath>

#include "qmac/errors.hpp"

namespace qmac {

ReceiverKind receiver_kind_from_string(const std::string& name) {
    if (name == "serial-opar") return ReceiverKind::serial_opa;
    if (name == "serial-pcr") return ReceiverKind::serial_conjugate;
    if (name == "parallel-opar") return ReceiverKind::parallel_opa;
    if (name == "parallel-pcr") return ReceiverKind::parallel_conjugate;
    throw validation_error("unknown receiver kind: " + name);
}

std::string receiver_kind_name(ReceiverKind kind) {
    switch (kind) {
        case ReceiverKind::serial_opa: return "serial-opar";
        case ReceiverKind::serial_conjugate: return "serial-pcr";
        case ReceiverKind::parallel_opa: return "parallel-opar";
        case ReceiverKind::parallel_conjugate: return "parallel-pcr";
    }
    throw validation_error("unknown receiver kind");
}

bool is_conjugate_kind(ReceiverKind kind) {
    return kind == ReceiverKind::serial_conjugate ||
           kind == ReceiverKind::parallel_conjugate;
}

std::vector<double> default_gains(ReceiverKind kind, const MacScenario& scn) {
    scn.validate();
    std::vector<double> gains(scn.senders());
    for (int k = 0; k < scn.senders(); ++k) {
        if (is_conjugate_kind(kind)) {
            if (std::abs(scn.n_b - 20.0) < 1e-9) {
                gains[k] = 2.0;
            } else if (std::abs(scn.n_b - 1e4) < 1e-2) {
                gains[k] = 1.0 + 1e-3;
            } else if (scn.n_b > 0.0) {
                gains[k] = 1.0 + 100.0 * scn.n_s[k] / scn.n_b;
            } else {
                gains[k] = 2.0;
            }
        } else {
            const double denom = std::sqrt(std::max(scn.n_b * (1.0 + scn.n_b), 1e-18));
            gains[k] = 1.0 + std::sqrt(scn.n_s[k]) / denom;
        }
    }
    return gains;
}

namespace {

struct PreparedConfig {
    std::vector<double> gains;
    std::vector<double> split;
};

PreparedConfig prepare(ReceiverKind kind, const MacScenario& scn, const ReceiverConfig& cfg) {
    scn.validate();
    PreparedConfig out;
    out.gains = cfg.gains.empty() ? default_gains(kind, scn) : cfg.gains;
    if (static_cast<int>(out.gains.size()) != scn.senders())
        throw validation_error("receiver: one gain per sender required");
    for (double g : out.gains)
        if (g < 1.0) throw validation_error("receiver: gains must be >= 1");
    if (cfg.n_r < 1) throw validation_error("receiver: n_r must be >= 1");
    out.split = cfg.split.empty() ? scn.eta : cfg.split;
    if (static_cast<int>(out.split.size()) != scn.senders())
        throw validation_error("receiver: one tap ratio per sender required");
    double sum = 0.0;
    for (double t : out.split) {
        if (t < 0.0 || t > 1.0) throw validation_error("receiver: tap ratios outside [0, 1]");
        sum += t;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw validation_error("receiver: tap ratios must form a full cascade (sum 1)");
    return out;
}

std::vector<double> bpsk_phases(int senders, std::uint32_t message_bits) {
    std::vector<double> phases(senders, 0.0);
    for (int k = 0; k < senders; ++k)
        if (message_bits >> k & 1u) phases[k] = M_PI;
    return phases;
}

// Tap the carrier mode into slices with the given weights; returns the mode
// index of each slice.  Slice k for k < s-1 is carved off by one
// beamsplitter; the last slice is the remaining carrier.
std::vector<int> slice_cascade(GaussianState& st, int carrier,
                               const std::vector<double>& split) {
    const int s = static_cast<int>(split.size());
    std::vector<int> slices(s);
    double remaining = 1.0;
    for (int k = 0; k + 1 < s; ++k) {
        st = apply_element(st, AddVacuum{});
        const int fresh = st.modes() - 1;
        const double ratio = remaining > 0.0 ? std::min(split[k] / remaining, 1.0) : 1.0;
        st = apply_element(st, Beamsplitter{ratio, carrier, fresh});
        slices[k] = carrier;
        carrier = fresh;
        remaining -= split[k];
    }
    slices[s - 1] = carrier;
    return slices;
}

}  // namespace

GaussianState receiver_front_end(ReceiverKind kind, const MacScenario& scn,
                                 const ReceiverConfig& cfg, std::uint32_t message_bits) {
    const PreparedConfig pc = prepare(kind, scn, cfg);
    const int s = scn.senders();
    if (message_bits >= (1u << s)) throw validation_error("receiver: bad message bits");
    GaussianState st = mac_output_state(scn, bpsk_phases(s, message_bits));
    // modes: 0 = received, 1..s = idlers

    switch (kind) {
        case ReceiverKind::serial_opa: {
            for (int k = 0; k < s; ++k) st = apply_element(st, Opa{pc.gains[k], 0, 1 + k});
            std::vector<int> arms(s);
            for (int k = 0; k < s; ++k) arms[k] = 1 + k;
            return st.reduced(arms);
        }
        case ReceiverKind::serial_conjugate: {
            std::vector<int> arms;
            for (int k = 0; k < s; ++k) {
                st = apply_element(st, AddVacuum{});
                const int conj = st.modes() - 1;
                st = apply_element(st, Opa{pc.gains[k], 0, conj});
                st = apply_element(st, Beamsplitter{0.5, conj, 1 + k});
                arms.push_back(conj);   // X_k = (C_k + A_k') / sqrt(2)
                arms.push_back(1 + k);  // Y_k = (A_k' - C_k) / sqrt(2)
            }
            return st.reduced(arms);
        }
        case ReceiverKind::parallel_opa: {
            const std::vector<int> slices = slice_cascade(st, 0, pc.split);
            for (int k = 0; k < s; ++k)
                st = apply_element(st, Opa{pc.gains[k], 1 + k, slices[k]});
            std::vector<int> arms(s);
            for (int k = 0; k < s; ++k) arms[k] = 1 + k;
            return st.reduced(arms);
        }
        case ReceiverKind::parallel_conjugate: {
            st = apply_element(st, AddVacuum{});
            const int conj = st.modes() - 1;
            st = apply_element(st, Opa{pc.gains[0], conj, 0});
            const std::vector<int> slices = slice_cascade(st, conj, pc.split);
            std::vector<int> arms;
            for (int k = 0; k < s; ++k) {
                st = apply_element(st, Beamsplitter{0.5, slices[k], 1 + k});
                arms.push_back(slices[k]);
                arms.push_back(1 + k);
            }
            return st.reduced(arms);
        }
    }
    throw validation_error("receiver: unknown kind");
}

RateRegion receiver_rate_region(ReceiverKind kind, const MacScenario& scn,
                                const ReceiverConfig& cfg) {
    prepare(kind, scn, cfg);  // fail fast on bad configuration
    const int s = scn.senders();
    if (s > 16) throw validation_error("receiver_rate_region: too many senders");
    if (cfg.stats == StatsMethod::exact_counts && is_conjugate_kind(kind))
        throw validation_error(
            "receiver_rate_region: conjugate receivers support only gaussian statistics");
    if (cfg.stats == StatsMethod::exact_counts && s != 2)
        throw validation_error(
            "receiver_rate_region: exact count statistics implemented for two senders");

    const std::uint32_t messages = 1u << s;
    RateRegion region(s, "receiver:" + receiver_kind_name(kind));

    if (cfg.stats == StatsMethod::gaussian) {
        std::vector<GaussianObservationModel> models(messages);
        for (std::uint32_t m = 0; m < messages; ++m) {
            const GaussianState fe = receiver_front_end(kind, scn, cfg, m);
            if (is_conjugate_kind(kind)) {
                std::vector<std::pair<int, int>> pairs(s);
                for (int k = 0; k < s; ++k) pairs[k] = {2 * k, 2 * k + 1};
                models[m] = wick_diff_model(fe, pairs, cfg.n_r);
            } else {
                std::vector<int> arms(s);
                for (int k = 0; k < s; ++k) arms[k] = k;
                models[m] = wick_count_model(fe, arms, cfg.n_r);
            }
        }
        for (std::uint32_t mask = 1; mask < messages; ++mask)
            region.set_bound(mask,
                             gaussian_conditional_mi(models, mask, s) / double(cfg.n_r));
        return region;
    }

    std::vector<JointCountDistribution> tables(messages);
    for (std::uint32_t m = 0; m < messages; ++m) {
        const GaussianState fe = receiver_front_end(kind, scn, cfg, m);
        tables[m] = total_counts_over_copies(joint_counts_from_state(fe), cfg.n_r);
        tables[m].message = m;
    }
    for (std::uint32_t mask = 1; mask < messages; ++mask)
        region.set_bound(mask, discrete_conditional_mi(tables, mask, s) / double(cfg.n_r));
    return region;
}

}  // namespace qmac
