#include "qmac/validate.hpp"

#include <cmath>
#include <random>

#include "qmac/capacity.hpp"
#include "qmac/counts.hpp"
#include "qmac/errors.hpp"
#include "qmac/fock.hpp"
#include "qmac/receiver_reference.hpp"
#include "qmac/receivers.hpp"
#include "qmac/wick.hpp"

namespace qmac {

namespace {

std::vector<MacScenario> scenario_corpus() {
    std::vector<MacScenario> out;
    auto add = [&](std::vector<double> eta, double tau, double nb, std::vector<double> ns) {
        MacScenario scn;
        scn.eta = std::move(eta);
        scn.tau = tau;
        scn.n_b = nb;
        scn.n_s = std::move(ns);
        out.push_back(scn);
    };
    add({1.0 / 3, 2.0 / 3}, 0.01, 20.0, {0.01, 0.01});
    add({0.5, 0.5}, 0.01, 20.0, {0.001, 0.01});
    add({0.5, 0.5}, 1e-3, 1e4, {0.001, 0.01});
    add({0.5, 0.5}, 1e-3, 0.1, {0.001, 0.01});
    add({0.5, 0.5}, 0.01, 20.0, {0.01, 0.01});
    add({1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.01, 20.0, {0.1, 0.1, 0.01});
    return out;
}

MacScenario random_two_sender(std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    MacScenario scn;
    const double eta1 = 0.2 + 0.6 * uni(rng);
    scn.eta = {eta1, 1.0 - eta1};
    scn.tau = 0.005 + 0.5 * uni(rng);
    scn.n_b = 0.5 + 25.0 * uni(rng);
    scn.n_s = {0.001 + 0.3 * uni(rng), 0.001 + 0.3 * uni(rng)};
    return scn;
}

std::complex<double> cp_of(double n_s, bool flip) {
    const double c = std::sqrt(n_s * (n_s + 1.0));
    return flip ? -c : c;
}

ValidationCheck front_end_check(const std::string& name, ReceiverKind kind) {
    ValidationCheck check{name, false, 0.0, 1e-10, "10 random parameter draws"};
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const MacScenario scn = random_two_sender(rng);
        const double g1 = 1.0 + 0.4 * uni(rng), g2 = 1.0 + 0.4 * uni(rng);
        const std::uint32_t msg = rng() & 3u;
        ReceiverConfig cfg;
        cfg.kind = kind;
        cfg.gains = {g1, g2};
        const ComplexMoments engine =
            receiver_front_end(kind, scn, cfg, msg).complex_moments();
        ComplexMoments ref;
        switch (kind) {
            case ReceiverKind::serial_opa:
                ref = serial_opa_reference(scn, g1, g2, cp_of(scn.n_s[0], msg & 1u),
                                           cp_of(scn.n_s[1], msg & 2u));
                break;
            case ReceiverKind::parallel_opa:
                ref = parallel_opa_reference(scn, g1, g2, cp_of(scn.n_s[0], msg & 1u),
                                             cp_of(scn.n_s[1], msg & 2u));
                break;
            default:
                ref = serial_conjugate_reference(scn, g1, g2, cp_of(scn.n_s[0], msg & 1u),
                                                 cp_of(scn.n_s[1], msg & 2u));
        }
        check.measured = std::max(check.measured,
                                  (engine.number - ref.number).cwiseAbs().maxCoeff());
    }
    check.passed = check.measured <= check.threshold;
    return check;
}

}  // namespace

std::vector<ValidationCheck> run_validation(bool fast) {
    std::vector<ValidationCheck> checks;

    checks.push_back(front_end_check("serial OPA engine vs closed form",
                                     ReceiverKind::serial_opa));
    checks.push_back(front_end_check("parallel OPA engine vs closed form",
                                     ReceiverKind::parallel_opa));
    checks.push_back(front_end_check("serial conjugate engine vs closed form",
                                     ReceiverKind::serial_conjugate));

    {
        ValidationCheck check{"lossless noiseless capacity reduction", false, 0.0, 1e-12,
                              "ea capacity equals twice the source entropy"};
        for (double n_s = 1e-4; n_s <= 10.0; n_s *= 2.0) {
            const double lhs = ea_capacity_single(n_s, 1.0, 0.0);
            const double rhs = 2.0 * thermal_entropy_bits(n_s);
            check.measured = std::max(check.measured, std::abs(lhs - rhs));
        }
        check.passed = check.measured <= check.threshold;
        checks.push_back(check);
    }

    {
        ValidationCheck check{"single-sender region reduction", false, 0.0, 1e-10,
                              "tmsv region equals the closed-form capacity"};
        for (double n_s : {1e-3, 0.01, 0.1}) {
            MacScenario scn;
            scn.eta = {1.0};
            scn.tau = 0.01;
            scn.n_b = 20.0;
            scn.n_s = {n_s};
            check.measured =
                std::max(check.measured, std::abs(tmsv_region(scn).bound(1) -
                                                  ea_capacity_single(n_s, 0.01, 20.0)));
        }
        check.passed = check.measured <= check.threshold;
        checks.push_back(check);
    }

    {
        ValidationCheck check{"region containment chain", false, 0.0, 1e-9,
                              "coherent within classical outer; tmsv within ea outer"};
        for (const MacScenario& scn : scenario_corpus()) {
            const RateRegion coh = coherent_region(scn);
            const RateRegion outer = classical_outer_region(scn);
            const RateRegion tmsv = tmsv_region(scn);
            const RateRegion ea = ea_outer_region(scn);
            for (std::uint32_t mask = 1; mask < coh.bounds.size(); ++mask) {
                check.measured = std::max(check.measured, coh.bound(mask) - outer.bound(mask));
                check.measured = std::max(check.measured, tmsv.bound(mask) - ea.bound(mask));
            }
            check.measured = std::max(check.measured, tmsv.max_monotonicity_violation());
        }
        check.passed = check.measured <= check.threshold;
        checks.push_back(check);
    }

    {
        ValidationCheck check{"phase covariance of the region state", false, 0.0, 1e-10,
                              "entropies at phases 0 and pi"};
        MacScenario scn;
        scn.eta = {0.5, 0.5};
        scn.tau = 0.05;
        scn.n_b = 2.0;
        scn.n_s = {0.2, 0.05};
        const GaussianState a = mac_output_state(scn, {0.0, 0.0});
        const GaussianState b = mac_output_state(scn, {M_PI, M_PI});
        for (const std::vector<int>& subset :
             {std::vector<int>{0}, {1}, {2}, {0, 2}, {0, 1, 2}})
            check.measured = std::max(
                check.measured, std::abs(a.entropy_bits(subset) - b.entropy_bits(subset)));
        check.passed = check.measured <= check.threshold;
        checks.push_back(check);
    }

    {
        ValidationCheck check{"count distribution closed forms", false, 0.0, 1e-11,
                              "geometric product and paired-source counts"};
        const double a = 0.3, s = 0.12;
        const auto indep = joint_counts_gaussian(2 * a + 1, 2 * s + 1, 0.0);
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                const double expected = std::pow(a, i) / std::pow(1 + a, i + 1) *
                                        std::pow(s, j) / std::pow(1 + s, j + 1);
                check.measured = std::max(check.measured, std::abs(indep.at(i, j) - expected));
            }
        const double n = 0.05;
        const auto paired =
            joint_counts_gaussian(2 * n + 1, 2 * n + 1, 2 * std::sqrt(n * (n + 1)));
        for (int k = 0; k < 10; ++k)
            check.measured = std::max(
                check.measured,
                std::abs(paired.at(k, k) - std::pow(n, k) / std::pow(1 + n, k + 1)));
        check.passed = check.measured <= check.threshold;
        checks.push_back(check);
    }

    {
        ValidationCheck check{"distribution normalization", false, 0.0, 1e-9,
                              "emitted tables carry mass within 1e-9 of unity"};
        const auto d = joint_counts_gaussian(1.3, 1.22, 0.28);
        check.measured = std::max(check.measured, std::abs(1.0 - d.mass()));
        const auto t = total_counts_over_copies(d, 200);
        check.measured = std::max(check.measured, std::abs(1.0 - t.mass()));
        check.passed = check.measured <= check.threshold;
        checks.push_back(check);
    }

    if (!fast) {
        {
            ValidationCheck check{"engine vs Fock oracle moments", false, 0.0, 1e-8,
                                  "low-brightness circuits with loss"};
            std::mt19937 rng(77);
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            for (int trial = 0; trial < 3; ++trial) {
                std::vector<CircuitElement> circuit = {
                    AddVacuum{}, AddVacuum{},
                    Opa{1.0 + 0.2 * uni(rng), 0, 1},
                    PhaseShift{M_PI * uni(rng), 0},
                    Loss{0.3 + 0.6 * uni(rng), 0.2 * uni(rng), 0},
                };
                const ComplexMoments engine =
                    apply_circuit(GaussianState(0), circuit).complex_moments();
                const ComplexMoments fock = FockOracle(circuit, 16).moments({0, 1});
                check.measured =
                    std::max({check.measured,
                              (engine.number - fock.number).cwiseAbs().maxCoeff(),
                              (engine.pair - fock.pair).cwiseAbs().maxCoeff()});
            }
            check.passed = check.measured <= check.threshold;
            checks.push_back(check);
        }

        {
            ValidationCheck check{"count statistics vs Fock oracle", false, 0.0, 1e-8,
                                  "total variation of receiver-style front ends"};
            const std::vector<CircuitElement> circuit = {
                AddVacuum{}, AddVacuum{},
                Opa{1.06, 0, 1},
                Loss{0.4, 0.12, 0},
                Opa{1.15, 0, 1},
            };
            const GaussianState st = apply_circuit(GaussianState(0), circuit);
            const auto model = joint_counts_from_state(st);
            const Eigen::MatrixXd oracle = FockOracle(circuit, 20).joint_counts(0, 1);
            double tv = 0.0;
            for (int i = 0; i < std::max<int>(model.rows, oracle.rows()); ++i)
                for (int j = 0; j < std::max<int>(model.cols, oracle.cols()); ++j) {
                    const double lhs =
                        (i < model.rows && j < model.cols) ? model.at(i, j) : 0.0;
                    const double rhs =
                        (i < oracle.rows() && j < oracle.cols()) ? oracle(i, j) : 0.0;
                    tv += std::abs(lhs - rhs);
                }
            check.measured = 0.5 * tv;
            check.passed = check.measured <= check.threshold;
            checks.push_back(check);
        }

        {
            ValidationCheck check{"entropies vs Fock diagonalization", false, 0.0, 1e-6,
                                  "thermal and lossy-pair reductions"};
            {
                const std::vector<CircuitElement> circuit = {AddThermal{0.1}};
                check.measured = std::max(
                    check.measured, std::abs(FockOracle(circuit, 40).entropy_bits({0}) -
                                             thermal_entropy_bits(0.1)));
            }
            {
                const std::vector<CircuitElement> circuit = {
                    AddVacuum{}, AddVacuum{}, Opa{1.08, 0, 1}, Loss{0.5, 0.1, 0}};
                const GaussianState st = apply_circuit(GaussianState(0), circuit);
                const FockOracle oracle(circuit, 16);
                for (const std::vector<int>& subset : {std::vector<int>{0}, {1}})
                    check.measured = std::max(check.measured,
                                              std::abs(oracle.entropy_bits(subset) -
                                                       st.entropy_bits(subset)));
            }
            check.passed = check.measured <= check.threshold;
            checks.push_back(check);
        }
    }

    return checks;
}

bool all_passed(const std::vector<ValidationCheck>& checks) {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

}  // namespace qmac
