#include "qmac/circuit.hpp"

#include <cmath>

#include "qmac/errors.hpp"

namespace qmac {

namespace {

void check_mode(const GaussianState& st, int mode, const char* what) {
    if (mode < 0 || mode >= st.modes())
        throw validation_error(std::string(what) + ": mode index out of range");
}

// Apply a 4x4 symplectic acting on modes (i, j) in quadrature order
// (q_i, p_i, q_j, p_j).
GaussianState apply_pair_symplectic(const GaussianState& st, int i, int j,
                                    const Eigen::Matrix4d& s4) {
    const int n = 2 * st.modes();
    std::array<int, 4> idx = {2 * i, 2 * i + 1, 2 * j, 2 * j + 1};
    Eigen::MatrixXd t = Eigen::MatrixXd::Identity(n, n);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) t(idx[r], idx[c]) = s4(r, c);
    return GaussianState(t * st.mean(), t * st.cov() * t.transpose());
}

GaussianState append_mode(const GaussianState& st, double thermal_mean) {
    const int n = 2 * st.modes();
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(n + 2);
    mean.head(n) = st.mean();
    Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(n + 2, n + 2);
    cov.topLeftCorner(n, n) = st.cov();
    cov(n, n) = cov(n + 1, n + 1) = 2.0 * thermal_mean + 1.0;
    return GaussianState(mean, cov);
}

}  // namespace

GaussianState apply_element(const GaussianState& state, const CircuitElement& elem) {
    return std::visit(
        [&](const auto& e) -> GaussianState {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, Beamsplitter>) {
                if (e.eta < 0.0 || e.eta > 1.0)
                    throw validation_error("beamsplitter: eta outside [0, 1]");
                check_mode(state, e.mode_a, "beamsplitter");
                check_mode(state, e.mode_b, "beamsplitter");
                if (e.mode_a == e.mode_b)
                    throw validation_error("beamsplitter: modes must differ");
                const double t = std::sqrt(e.eta), r = std::sqrt(1.0 - e.eta);
                Eigen::Matrix4d s;
                s << t, 0, r, 0,
                     0, t, 0, r,
                    -r, 0, t, 0,
                     0, -r, 0, t;
                return apply_pair_symplectic(state, e.mode_a, e.mode_b, s);
            } else if constexpr (std::is_same_v<T, PhaseShift>) {
                check_mode(state, e.mode, "phase");
                const double c = std::cos(e.theta), sn = std::sin(e.theta);
                const int n = 2 * state.modes();
                Eigen::MatrixXd t = Eigen::MatrixXd::Identity(n, n);
                t(2 * e.mode, 2 * e.mode) = c;
                t(2 * e.mode, 2 * e.mode + 1) = -sn;
                t(2 * e.mode + 1, 2 * e.mode) = sn;
                t(2 * e.mode + 1, 2 * e.mode + 1) = c;
                return GaussianState(t * state.mean(), t * state.cov() * t.transpose());
            } else if constexpr (std::is_same_v<T, Opa>) {
                if (e.gain < 1.0) throw validation_error("opa: gain must be >= 1");
                check_mode(state, e.mode_a, "opa");
                check_mode(state, e.mode_b, "opa");
                if (e.mode_a == e.mode_b) throw validation_error("opa: modes must differ");
                const double u = std::sqrt(e.gain), v = std::sqrt(e.gain - 1.0);
                Eigen::Matrix4d s;
                s << u, 0, v, 0,
                     0, u, 0, -v,
                     v, 0, u, 0,
                     0, -v, 0, u;
                return apply_pair_symplectic(state, e.mode_a, e.mode_b, s);
            } else if constexpr (std::is_same_v<T, Loss>) {
                if (e.tau < 0.0 || e.tau > 1.0)
                    throw validation_error("loss: tau outside [0, 1]");
                if (e.n_b < 0.0) throw validation_error("loss: negative noise");
                check_mode(state, e.mode, "loss");
                if (e.tau == 1.0) return state;  // nothing couples in
                const double rt = std::sqrt(e.tau);
                Eigen::VectorXd mean = state.mean();
                Eigen::MatrixXd cov = state.cov();
                const int q = 2 * e.mode, p = 2 * e.mode + 1;
                mean(q) *= rt;
                mean(p) *= rt;
                cov.row(q) *= rt;
                cov.row(p) *= rt;
                cov.col(q) *= rt;
                cov.col(p) *= rt;
                const double add = 2.0 * e.n_b + 1.0 - e.tau;
                cov(q, q) += add;
                cov(p, p) += add;
                return GaussianState(std::move(mean), std::move(cov));
            } else if constexpr (std::is_same_v<T, AddVacuum>) {
                return append_mode(state, 0.0);
            } else if constexpr (std::is_same_v<T, AddThermal>) {
                if (e.mean_photons < 0.0)
                    throw validation_error("add_thermal: negative mean photon number");
                return append_mode(state, e.mean_photons);
            } else {  // Discard
                check_mode(state, e.mode, "discard");
                if (state.modes() == 1)
                    throw validation_error("discard: cannot remove the last mode");
                std::vector<int> keep;
                for (int m = 0; m < state.modes(); ++m)
                    if (m != e.mode) keep.push_back(m);
                return state.reduced(keep);
            }
        },
        elem);
}

GaussianState apply_circuit(const GaussianState& state,
                            const std::vector<CircuitElement>& circuit) {
    GaussianState st = state;
    for (const auto& e : circuit) st = apply_element(st, e);
    return st;
}

GaussianState tmsv_source(double n_s) {
    if (n_s < 0.0) throw validation_error("tmsv_source: negative brightness");
    GaussianState st(2);
    return apply_element(st, Opa{n_s + 1.0, 0, 1});
}

void MacScenario::validate() const {
    if (eta.empty() || n_s.size() != eta.size())
        throw validation_error("MacScenario: eta and n_s must be nonempty, equal length");
    double sum = 0.0;
    for (double w : eta) {
        if (w < 0.0) throw validation_error("MacScenario: negative mixing weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw validation_error("MacScenario: mixing weights must sum to 1");
    if (tau < 0.0 || tau > 1.0) throw validation_error("MacScenario: tau outside [0, 1]");
    if (n_b < 0.0) throw validation_error("MacScenario: negative thermal noise");
    for (double b : n_s)
        if (b < 0.0) throw validation_error("MacScenario: negative source brightness");
}

std::vector<CircuitElement> mixing_cascade(const std::vector<double>& weights,
                                           const std::vector<int>& modes) {
    if (weights.size() != modes.size() || weights.empty())
        throw validation_error("mixing_cascade: weights/modes mismatch");
    std::vector<CircuitElement> out;
    double acc = weights[0];
    for (size_t k = 1; k < weights.size(); ++k) {
        const double next = acc + weights[k];
        const double t = next > 0.0 ? acc / next : 1.0;
        out.push_back(Beamsplitter{t, modes[0], modes[k]});
        acc = next;
    }
    return out;
}

std::vector<CircuitElement> mac_output_circuit(const MacScenario& scn,
                                               const std::vector<double>& phases) {
    scn.validate();
    const int s = scn.senders();
    if (static_cast<int>(phases.size()) != s)
        throw validation_error("mac_output_circuit: one phase per sender required");
    for (double th : phases)
        if (!(th >= 0.0 && th < 2.0 * M_PI))
            throw validation_error("mac_output_circuit: phases must lie in [0, 2pi)");

    std::vector<CircuitElement> c;
    for (int k = 0; k < 2 * s; ++k) c.push_back(AddVacuum{});
    std::vector<int> signal_modes(s);
    for (int k = 0; k < s; ++k) {
        signal_modes[k] = k;
        c.push_back(Opa{scn.n_s[k] + 1.0, k, s + k});
        if (phases[k] != 0.0) c.push_back(PhaseShift{phases[k], k});
    }
    for (const auto& e : mixing_cascade(scn.eta, signal_modes)) c.push_back(e);
    c.push_back(Loss{scn.tau, scn.n_b, 0});
    for (int k = s - 1; k >= 1; --k) c.push_back(Discard{k});
    return c;
}

GaussianState mac_output_state(const MacScenario& scn, const std::vector<double>& phases) {
    return apply_circuit(GaussianState(0), mac_output_circuit(scn, phases));
}

}  // namespace qmac
