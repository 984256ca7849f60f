#include "qmac/receiver_reference.hpp"

#include <cmath>

#include "qmac/errors.hpp"

namespace qmac {

namespace {

void require_two_senders(const MacScenario& scn) {
    scn.validate();
    if (scn.senders() != 2)
        throw validation_error("receiver reference moments: two senders required");
}

}  // namespace

ComplexMoments serial_opa_reference(const MacScenario& scn, double g1, double g2,
                                    std::complex<double> cp1, std::complex<double> cp2) {
    require_two_senders(scn);
    const double eta = scn.eta[0], tau = scn.tau, nb = scn.n_b;
    const double ns1 = scn.n_s[0], ns2 = scn.n_s[1];
    const double nstar = tau * (ns1 * eta + ns2 * (1.0 - eta)) + nb;

    const double a = g1 * ns1 + 2.0 * std::sqrt((g1 - 1.0) * g1 * tau * eta) * cp1.real() +
                     (g1 - 1.0) * (1.0 + nstar);
    const double s =
        g2 * ns2 + 2.0 * std::sqrt((g2 - 1.0) * g2 * g1 * tau * (1.0 - eta)) * cp2.real() +
        (g2 - 1.0) * ((g1 - 1.0) * ns1 + g1 * (1.0 + nstar) +
                      2.0 * std::sqrt((g1 - 1.0) * g1 * tau * eta) * cp1.real());
    const std::complex<double> c =
        std::sqrt(g2 - 1.0) *
            (std::sqrt((g1 - 1.0) * g1) * (nstar + 1.0 + ns1) +
             (g1 - 1.0) * std::sqrt(tau * eta) * std::conj(cp1) +
             g1 * std::sqrt(tau * eta) * cp1) +
        std::conj(cp2) * std::sqrt(tau * (1.0 - eta) * g2 * (g1 - 1.0));

    ComplexMoments m;
    m.number = Eigen::MatrixXcd::Zero(2, 2);
    m.pair = Eigen::MatrixXcd::Zero(2, 2);
    m.number(0, 0) = a;
    m.number(1, 1) = s;
    m.number(1, 0) = c;          // <A2''^dag A1''> ... c = <A1'' A2''^dag>
    m.number(0, 1) = std::conj(c);
    return m;
}

ComplexMoments parallel_opa_reference(const MacScenario& scn, double g1, double g2,
                                      std::complex<double> cp1, std::complex<double> cp2) {
    require_two_senders(scn);
    const double eta = scn.eta[0], tau = scn.tau, nb = scn.n_b;
    const double ns1 = scn.n_s[0], ns2 = scn.n_s[1];
    const double nstar = tau * (eta * ns1 + (1.0 - eta) * ns2) + nb;

    const double a = eta * (g1 - 1.0) * nb +
                     2.0 * eta * std::sqrt((g1 - 1.0) * g1 * tau) * cp1.real() +
                     eta * (g1 - 1.0) * tau * (eta * ns1 + (1.0 - eta) * ns2) + g1 * ns1 +
                     g1 - 1.0;
    const double s =
        (g2 - 1.0) * ((1.0 - eta) * (nb + eta * tau * ns1) +
                      (1.0 - eta) * (1.0 - eta) * tau * ns2) +
        g2 * (ns2 + 1.0) + 2.0 * (eta - 1.0) * std::sqrt((g2 - 1.0) * g2 * tau) * cp2.real() -
        1.0;
    const std::complex<double> c =
        -std::sqrt((1.0 - eta) * eta * (g2 - 1.0)) *
            (std::sqrt(g1 - 1.0) * nstar + cp1 * std::sqrt(g1 * tau)) +
        std::conj(cp2) * std::sqrt((1.0 - eta) * eta * (g1 - 1.0) * g2 * tau);

    ComplexMoments m;
    m.number = Eigen::MatrixXcd::Zero(2, 2);
    m.pair = Eigen::MatrixXcd::Zero(2, 2);
    m.number(0, 0) = a;
    m.number(1, 1) = s;
    m.number(1, 0) = c;
    m.number(0, 1) = std::conj(c);
    return m;
}

ComplexMoments serial_conjugate_reference(const MacScenario& scn, double g1, double g2,
                                          std::complex<double> cp1,
                                          std::complex<double> cp2) {
    require_two_senders(scn);
    const double eta = scn.eta[0], tau = scn.tau, nb = scn.n_b;
    const double ns1 = scn.n_s[0], ns2 = scn.n_s[1];
    const double nstar = tau * (eta * ns1 + (1.0 - eta) * ns2) + nb;
    const std::complex<double> iu(0.0, 1.0);

    const double re1 = cp1.real(), im1 = cp1.imag();
    const double root1 = std::sqrt(eta * (g1 - 1.0) * tau);
    const double a1 = 0.5 * (2.0 * re1 * root1 + eta * g1 * tau * ns1 -
                             (eta - 1.0) * (g1 - 1.0) * tau * ns2 - eta * tau * ns1 +
                             (g1 - 1.0) * (nb + 1.0) + ns1);
    const double s1 = 0.5 * (-2.0 * re1 * root1 + eta * (g1 - 1.0) * tau * ns1 -
                             (eta - 1.0) * (g1 - 1.0) * tau * ns2 +
                             (g1 - 1.0) * (nb + 1.0) + ns1);
    const std::complex<double> c1 =
        0.5 * (-2.0 * iu * im1 * root1 + eta * (1.0 - g1) * tau * ns1 +
               (eta - 1.0) * (g1 - 1.0) * tau * ns2 + (1.0 - g1) * (nb + 1.0) + ns1);

    const double rootx = std::sqrt((1.0 - eta) * (g1 - 1.0) * tau);
    const double rooty = std::sqrt(eta * g1 * (g2 - 1.0) * tau);
    const double rootz = std::sqrt((g1 - 1.0) * g1 * (g2 - 1.0));
    const std::complex<double> a3 =
        0.5 * (std::conj(cp2) * rootx + cp1 * rooty + rootz * (nstar + 1.0));
    const std::complex<double> s3 =
        0.5 * (-std::conj(cp2) * rootx - cp1 * rooty + rootz * (nstar + 1.0));
    const std::complex<double> c31 =
        0.5 * (std::conj(cp2) * rootx - cp1 * rooty - rootz * (nstar + 1.0));
    const std::complex<double> c32 =
        0.5 * (-std::conj(cp2) * rootx + cp1 * rooty - rootz * (nstar + 1.0));

    const double re2 = cp2.real(), im2 = cp2.imag();
    const double root2 = std::sqrt((1.0 - eta) * g1 * (g2 - 1.0) * tau);
    const double a2 = 0.5 * (2.0 * re2 * root2 + g1 * (g2 - 1.0) * (nstar + 1.0) + ns2);
    const double s2 = 0.5 * (-2.0 * re2 * root2 + g1 * (g2 - 1.0) * (nstar + 1.0) + ns2);
    const std::complex<double> c2 =
        0.5 * (-2.0 * iu * im2 * root2 - g1 * (g2 - 1.0) * (nstar + 1.0) + ns2);

    // order (X1, Y1, X2, Y2); number(i, j) = <a_i^dag a_j> so the printed
    // constants sit at number(j, i) = <a_i a_j^dag> positions transposed
    ComplexMoments m;
    m.number = Eigen::MatrixXcd::Zero(4, 4);
    m.pair = Eigen::MatrixXcd::Zero(4, 4);
    m.number(0, 0) = a1;
    m.number(1, 1) = s1;
    m.number(2, 2) = a2;
    m.number(3, 3) = s2;
    auto put = [&](int i, int j, std::complex<double> value) {
        // value = <a_i a_j^dag>  ->  <a_j^dag a_i> = number(j, i)
        m.number(j, i) = value;
        m.number(i, j) = std::conj(value);
    };
    put(0, 1, c1);   // <X1 Y1^dag>
    put(0, 2, a3);   // <X1 X2^dag>
    put(0, 3, c31);  // <X1 Y2^dag>
    put(1, 2, c32);  // <Y1 X2^dag>
    put(1, 3, s3);   // <Y1 Y2^dag>
    put(2, 3, c2);   // <X2 Y2^dag>
    return m;
}

}  // namespace qmac
