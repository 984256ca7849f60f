#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qmac/circuit.hpp"
#include "qmac/errors.hpp"
#include "qmac/gaussian.hpp"

using namespace qmac;

TEST_CASE("thermal entropy closed form") {
    CHECK(thermal_entropy_bits(0.0) == 0.0);
    CHECK(thermal_entropy_bits(1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(thermal_entropy_bits(20.0) == doctest::Approx(5.8001039806067191).epsilon(1e-14));
    CHECK(thermal_entropy_bits(0.01) ==
          doctest::Approx(0.080937407804587989).epsilon(1e-14));
    CHECK_THROWS_AS(thermal_entropy_bits(-0.5), validation_error);
}

TEST_CASE("thermal entropy near zero is continuous and monotone") {
    double prev = 0.0;
    for (double x : {1e-300, 1e-18, 1e-15, 1e-13, 1e-12, 1e-10, 1e-6}) {
        const double val = thermal_entropy_bits(x);
        CHECK(val > prev);
        prev = val;
    }
    // series branch agrees with the direct formula where both are stable
    const double direct = ((1e-12 + 1) * std::log1p(1e-12) - 1e-12 * std::log(1e-12)) / M_LN2;
    CHECK(thermal_entropy_bits(1e-12) == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("vacuum state basics") {
    GaussianState vac(1);
    const auto nus = vac.symplectic_eigenvalues();
    REQUIRE(nus.size() == 1);
    CHECK(nus[0] == 1.0);
    CHECK(vac.entropy_bits() == 0.0);
    CHECK(vac.mean_photons(0) == doctest::Approx(0.0));
}

TEST_CASE("single-mode thermal spectrum and entropy") {
    const double n = 0.35;
    GaussianState st = apply_element(GaussianState(0), AddThermal{n});
    const auto nus = st.symplectic_eigenvalues();
    REQUIRE(nus.size() == 1);
    CHECK(nus[0] == doctest::Approx(2 * n + 1).epsilon(1e-14));
    CHECK(st.entropy_bits() == doctest::Approx(thermal_entropy_bits(n)).epsilon(1e-13));
}

TEST_CASE("tmsv is pure with thermal reductions") {
    GaussianState st = tmsv_source(0.01);
    const auto nus = st.symplectic_eigenvalues();
    CHECK(nus[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nus[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(st.entropy_bits() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(st.reduced({0}).symplectic_eigenvalues()[0] ==
          doctest::Approx(1.02).epsilon(1e-13));
    CHECK(st.entropy_bits({0}) ==
          doctest::Approx(0.080937407804587989).epsilon(1e-12));
    CHECK(st.entropy_bits({1}) ==
          doctest::Approx(0.080937407804587989).epsilon(1e-12));
}

TEST_CASE("non-physical covariance rejected") {
    Eigen::MatrixXd cov = 0.5 * Eigen::MatrixXd::Identity(2, 2);
    GaussianState st(Eigen::VectorXd::Zero(2), cov);
    CHECK_THROWS_AS(st.symplectic_eigenvalues(), physicality_error);
}

TEST_CASE("rounding-level defects clamp to exactly one") {
    Eigen::MatrixXd cov = (1.0 - 1e-8) * Eigen::MatrixXd::Identity(2, 2);
    GaussianState st(Eigen::VectorXd::Zero(2), cov);
    const auto nus = st.symplectic_eigenvalues();
    CHECK(nus[0] == 1.0);
    CHECK(st.entropy_bits() == 0.0);
}

TEST_CASE("entropy increment matches direct differences where both are stable") {
    CHECK(thermal_entropy_increment_bits(20.0, 0.3) ==
          doctest::Approx(thermal_entropy_bits(20.3) - thermal_entropy_bits(20.0))
              .epsilon(1e-12));
    CHECK(thermal_entropy_increment_bits(0.0, 0.7) ==
          doctest::Approx(thermal_entropy_bits(0.7)).epsilon(1e-14));
    // tiny increment on a bright background keeps full relative precision
    const double d = thermal_entropy_increment_bits(1e4, 1e-9);
    CHECK(d == doctest::Approx(1e-9 * std::log2(1.0 + 1e-4)).epsilon(1e-8));
    CHECK_THROWS_AS(thermal_entropy_increment_bits(-1.0, 0.5), validation_error);
}

TEST_CASE("complex moments round trip") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        GaussianState st(3);
        st = apply_element(st, Opa{1.0 + uni(rng), 0, 1});
        st = apply_element(st, Beamsplitter{uni(rng), 1, 2});
        st = apply_element(st, PhaseShift{2 * M_PI * uni(rng) * 0.99, 0});
        st = apply_element(st, Loss{0.2 + 0.7 * uni(rng), uni(rng), 1});
        const GaussianState back = state_from_complex_moments(st.complex_moments());
        CHECK((back.cov() - st.cov()).cwiseAbs().maxCoeff() < 1e-11);
    }
}

TEST_CASE("quadrature form of two-arm moments") {
    // thermal occupations a, s with a real phase-insensitive cross moment c
    const double a = 0.42, s = 0.17, c = 0.2;
    ComplexMoments m;
    m.number = Eigen::MatrixXcd::Zero(2, 2);
    m.pair = Eigen::MatrixXcd::Zero(2, 2);
    m.number(0, 0) = a;
    m.number(1, 1) = s;
    m.number(0, 1) = c;
    m.number(1, 0) = c;
    const GaussianState st = state_from_complex_moments(m);
    CHECK(st.cov()(0, 0) == doctest::Approx(2 * a + 1).epsilon(1e-14));
    CHECK(st.cov()(1, 1) == doctest::Approx(2 * a + 1).epsilon(1e-14));
    CHECK(st.cov()(2, 2) == doctest::Approx(2 * s + 1).epsilon(1e-14));
    CHECK(st.cov()(0, 2) == doctest::Approx(2 * c).epsilon(1e-14));
    CHECK(st.cov()(1, 3) == doctest::Approx(2 * c).epsilon(1e-14));
    CHECK(st.cov()(0, 3) == doctest::Approx(0.0));
}

TEST_CASE("entropy additivity for product states") {
    GaussianState st = apply_element(GaussianState(0), AddThermal{0.3});
    st = apply_element(st, AddThermal{1.7});
    CHECK(st.entropy_bits() ==
          doctest::Approx(thermal_entropy_bits(0.3) + thermal_entropy_bits(1.7))
              .epsilon(1e-11));
}

TEST_CASE("entropy invariant under symplectic circuit elements") {
    GaussianState st = tmsv_source(0.2);
    st = apply_element(st, Loss{0.7, 0.4, 0});
    const double before = st.entropy_bits();
    GaussianState moved = apply_element(st, Beamsplitter{0.3, 0, 1});
    moved = apply_element(moved, PhaseShift{1.1, 1});
    moved = apply_element(moved, Opa{1.3, 0, 1});
    CHECK(moved.entropy_bits() == doctest::Approx(before).epsilon(1e-10));
}

TEST_CASE("purity of unitary circuits from vacuum") {
    GaussianState st(3);
    st = apply_element(st, Opa{1.8, 0, 1});
    st = apply_element(st, Beamsplitter{0.25, 1, 2});
    st = apply_element(st, PhaseShift{0.7, 2});
    CHECK(st.entropy_bits() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("entropy argument validation") {
    GaussianState st(2);
    CHECK_THROWS_AS(st.entropy_bits(std::vector<int>{}), validation_error);
    CHECK_THROWS_AS(st.entropy_bits({2}), validation_error);
}
