#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qmac/circuit.hpp"
#include "qmac/errors.hpp"

using namespace qmac;

namespace {

double total_mean_photons(const GaussianState& st) {
    double n = 0.0;
    for (int m = 0; m < st.modes(); ++m) n += st.mean_photons(m);
    return n;
}

}  // namespace

TEST_CASE("beamsplitter preserves vacuum") {
    GaussianState st(2);
    st = apply_element(st, Beamsplitter{0.37, 0, 1});
    CHECK((st.cov() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("loss injects the stated output noise") {
    GaussianState st(1);
    st = apply_element(st, Loss{0.01, 20.0, 0});
    CHECK(st.mean_photons(0) == doctest::Approx(20.0).epsilon(1e-13));
}

TEST_CASE("loss at full transmissivity is the identity") {
    GaussianState st = tmsv_source(0.3);
    const GaussianState out = apply_element(st, Loss{1.0, 5.0, 0});
    CHECK((out.cov() - st.cov()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("opa on vacuum produces a squeezed pair of brightness gain-1") {
    const double gain = 1.73;
    GaussianState st(2);
    st = apply_element(st, Opa{gain, 0, 1});
    CHECK(st.mean_photons(0) == doctest::Approx(gain - 1).epsilon(1e-12));
    CHECK(st.mean_photons(1) == doctest::Approx(gain - 1).epsilon(1e-12));
    CHECK(st.entropy_bits() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("tmsv cross correlation") {
    GaussianState st = tmsv_source(1.0);
    const ComplexMoments m = st.complex_moments();
    CHECK(m.pair(0, 1).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(m.pair(0, 1).imag() == doctest::Approx(0.0));
    CHECK(m.number(0, 1) == std::complex<double>(0.0, 0.0));
    CHECK(m.number(0, 0).real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(tmsv_source(-0.1), validation_error);
}

TEST_CASE("passive elements preserve photon number") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    GaussianState st = tmsv_source(0.4);
    st = apply_element(st, AddThermal{0.8});
    const double before = total_mean_photons(st);
    for (int step = 0; step < 8; ++step) {
        const int a = int(rng() % 3);
        const int b = (a + 1 + int(rng() % 2)) % 3;
        st = apply_element(st, Beamsplitter{uni(rng), a, b});
        st = apply_element(st, PhaseShift{6.28 * uni(rng), int(rng() % 3)});
    }
    CHECK(total_mean_photons(st) == doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("mixing cascade realizes the requested weights") {
    const std::vector<double> eta = {0.2, 0.5, 0.3};
    GaussianState st(0);
    // prepare three thermal signals of distinct brightness
    for (double n : {0.1, 0.2, 0.4}) st = apply_element(st, AddThermal{n});
    for (const auto& e : mixing_cascade(eta, {0, 1, 2})) st = apply_element(st, e);
    const double expected = 0.2 * 0.1 + 0.5 * 0.2 + 0.3 * 0.4;
    CHECK(st.mean_photons(0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("mixing cascade tolerates zero weights") {
    GaussianState st(0);
    for (double n : {0.3, 0.0, 0.5}) st = apply_element(st, AddThermal{n});
    for (const auto& e : mixing_cascade({0.0, 0.25, 0.75}, {0, 1, 2}))
        st = apply_element(st, e);
    CHECK(st.mean_photons(0) == doctest::Approx(0.25 * 0.0 + 0.75 * 0.5).epsilon(1e-12));
}

TEST_CASE("mac output state second moments") {
    MacScenario scn;
    scn.eta = {1.0 / 3.0, 2.0 / 3.0};
    scn.tau = 0.01;
    scn.n_b = 20.0;
    scn.n_s = {0.01, 0.01};
    const GaussianState out = mac_output_state(scn, {0.0, 0.0});
    REQUIRE(out.modes() == 3);
    const ComplexMoments m = out.complex_moments();
    // received brightness tau * sum(eta_k n_k) + n_b
    CHECK(m.number(0, 0).real() == doctest::Approx(20.0001).epsilon(1e-12));
    for (int k = 0; k < 2; ++k) {
        const double cp = std::sqrt(scn.n_s[k] * (scn.n_s[k] + 1));
        CHECK(m.pair(0, 1 + k).real() ==
              doctest::Approx(std::sqrt(scn.tau * scn.eta[k]) * cp).epsilon(1e-12));
        CHECK(std::abs(m.number(0, 1 + k)) < 1e-13);
        CHECK(m.number(1 + k, 1 + k).real() ==
              doctest::Approx(scn.n_s[k]).epsilon(1e-12));
    }
}

TEST_CASE("mac output with phase pi flips the correlation sign") {
    MacScenario scn;
    scn.eta = {1.0};
    scn.tau = 0.37;
    scn.n_b = 0.6;
    scn.n_s = {0.2};
    const GaussianState a = mac_output_state(scn, {0.0});
    const GaussianState b = mac_output_state(scn, {M_PI});
    const double cp = std::sqrt(0.2 * 1.2);
    CHECK(a.complex_moments().pair(0, 1).real() ==
          doctest::Approx(std::sqrt(0.37) * cp).epsilon(1e-12));
    CHECK(b.complex_moments().pair(0, 1).real() ==
          doctest::Approx(-std::sqrt(0.37) * cp).epsilon(1e-12));
}

TEST_CASE("dark senders leave received mode thermal and uncorrelated") {
    MacScenario scn;
    scn.eta = {0.5, 0.5};
    scn.tau = 0.2;
    scn.n_b = 3.0;
    scn.n_s = {0.0, 0.0};
    const GaussianState out = mac_output_state(scn, {0.0, 0.0});
    const ComplexMoments m = out.complex_moments();
    CHECK(m.number(0, 0).real() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(m.pair(0, 1)) < 1e-13);
    CHECK(std::abs(m.pair(0, 2)) < 1e-13);
    CHECK(out.entropy_bits({1}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("scenario and element validation") {
    MacScenario scn;
    scn.eta = {0.6, 0.5};
    scn.tau = 0.5;
    scn.n_b = 1.0;
    scn.n_s = {0.1, 0.1};
    CHECK_THROWS_AS(scn.validate(), validation_error);
    scn.eta = {0.5, 0.5};
    scn.tau = 1.5;
    CHECK_THROWS_AS(scn.validate(), validation_error);
    scn.tau = 0.5;
    CHECK_THROWS_AS(mac_output_state(scn, {0.0, 7.0}), validation_error);
    CHECK_THROWS_AS(mac_output_state(scn, {0.0}), validation_error);

    GaussianState st(2);
    CHECK_THROWS_AS(apply_element(st, Beamsplitter{1.2, 0, 1}), validation_error);
    CHECK_THROWS_AS(apply_element(st, Opa{0.9, 0, 1}), validation_error);
    CHECK_THROWS_AS(apply_element(st, Loss{0.5, -1.0, 0}), validation_error);
    CHECK_THROWS_AS(apply_element(st, Beamsplitter{0.5, 0, 2}), validation_error);
}
