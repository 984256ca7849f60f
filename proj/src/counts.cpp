#include "qmac/counts.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

#include <fftw3.h>

#include "qmac/errors.hpp"

namespace qmac {

namespace {

constexpr double kMassTarget = 1e-10;     // allowed truncated mass
constexpr long kMaxTableCells = 32L * 1000 * 1000;  // 0.5 GiB of complex FFT grid

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// geometric tail: smallest n with (m/(1+m))^n <= eps
int thermal_quantile(double mean, double log_eps) {
    if (mean <= 1e-12) return 8;
    return static_cast<int>(std::ceil(log_eps / std::log(mean / (1.0 + mean)))) + 2;
}

int next_fast_size(int n) {
    for (int m = n;; ++m) {
        int r = m;
        for (int f : {2, 3, 5})
            while (r % f == 0) r /= f;
        if (r == 1) return m;
    }
}

}  // namespace

double JointCountDistribution::mass() const {
    double s = 0.0;
    for (double x : p) s += x;
    return s;
}

void JointCountDistribution::moments(double mean[2], double cov[3]) const {
    double m1 = 0, m2 = 0, s11 = 0, s22 = 0, s12 = 0, w = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const double pij = at(i, j);
            w += pij;
            m1 += pij * i;
            m2 += pij * j;
            s11 += pij * double(i) * i;
            s22 += pij * double(j) * j;
            s12 += pij * double(i) * j;
        }
    m1 /= w;
    m2 /= w;
    mean[0] = m1;
    mean[1] = m2;
    cov[0] = s11 / w - m1 * m1;
    cov[1] = s22 / w - m2 * m2;
    cov[2] = s12 / w - m1 * m2;
}

JointCountDistribution joint_counts_gaussian(double e_var, double s_var, double c_cross) {
    if (e_var < 1.0 - 1e-12 || s_var < 1.0 - 1e-12)
        throw physicality_error("joint_counts_gaussian: per-mode variance below vacuum");
    const double a = std::max(0.0, 0.5 * (e_var - 1.0));
    const double s = std::max(0.0, 0.5 * (s_var - 1.0));
    const double kappa = 0.25 * c_cross * c_cross;
    const double q00 = (1.0 + a) * (1.0 + s) - kappa;
    const double u = s * (1.0 + a) - kappa;
    const double v = a * (1.0 + s) - kappa;
    const double d = a * s - kappa;
    if (q00 <= 0.0 || u < -1e-12 || v < -1e-12)
        throw physicality_error("joint_counts_gaussian: cross correlation too strong");

    int n1 = std::max(16, thermal_quantile(a, std::log(1e-13)));
    int n2 = std::max(16, thermal_quantile(s, std::log(1e-13)));
    JointCountDistribution out;
    for (;;) {
        if (long(n1) * n2 > kMaxTableCells)
            throw resource_error("joint_counts_gaussian: support too large");
        out.rows = n1;
        out.cols = n2;
        out.p.assign(std::size_t(n1) * n2, 0.0);
        out.at(0, 0) = 1.0 / q00;
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) {
                if (i == 0 && j == 0) continue;
                double acc = 0.0;
                if (i > 0) acc += v * out.at(i - 1, j);
                if (j > 0) acc += u * out.at(i, j - 1);
                if (i > 0 && j > 0) acc -= d * out.at(i - 1, j - 1);
                const double pij = acc / q00;
                if (pij < -1e-12)
                    throw physicality_error("joint_counts_gaussian: negative probability");
                out.at(i, j) = std::max(pij, 0.0);
            }
        out.mass_deficit = 1.0 - out.mass();
        if (out.mass_deficit <= kMassTarget) break;
        n1 = n1 + n1 / 2 + 4;
        n2 = n2 + n2 / 2 + 4;
    }
    return out;
}

JointCountDistribution joint_counts_from_state(const GaussianState& st, double form_tol) {
    if (st.modes() != 2)
        throw validation_error("joint_counts_from_state: need a two-mode state");
    if (st.max_abs_mean() > form_tol)
        throw validation_error("joint_counts_from_state: nonzero mean unsupported");
    const Eigen::MatrixXd& v = st.cov();
    const double e_var = v(0, 0), s_var = v(2, 2), c = v(0, 2);
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
    auto close = [&](double x, double y) { return std::abs(x - y) <= form_tol * scale; };
    // accepted forms: equal q/p variances per arm, no q-p cross terms, and a
    // real cross correlation of a single type -- beamsplitter-like
    // (<q1 q2> = <p1 p2> = C) or squeezer-like (<q1 q2> = -<p1 p2> = C).
    // The count distribution depends on it only through C^2.
    if (!close(v(1, 1), e_var) || !close(v(3, 3), s_var) ||
        (!close(v(1, 3), c) && !close(v(1, 3), -c)) || !close(v(0, 1), 0.0) ||
        !close(v(2, 3), 0.0) || !close(v(0, 3), 0.0) || !close(v(1, 2), 0.0))
        throw validation_error("joint_counts_from_state: covariance not of the "
                               "phase-averaged two-arm form");
    return joint_counts_gaussian(e_var, s_var, c);
}

JointCountDistribution total_counts_over_copies(const JointCountDistribution& per_copy,
                                                long n_r) {
    if (n_r < 1) throw validation_error("total_counts_over_copies: n_r must be >= 1");
    double mean[2], cov[3];
    per_copy.moments(mean, cov);
    const double m1 = n_r * mean[0], m2 = n_r * mean[1];
    const double sd1 = std::sqrt(std::max(n_r * cov[0], 0.0));
    const double sd2 = std::sqrt(std::max(n_r * cov[1], 0.0));
    const int need1 = static_cast<int>(std::ceil(m1 + 8.0 * sd1)) + per_copy.rows + 8;
    const int need2 = static_cast<int>(std::ceil(m2 + 8.0 * sd2)) + per_copy.cols + 8;
    const int l1 = next_fast_size(need1);
    const int l2 = next_fast_size(need2);
    if (long(l1) * l2 > kMaxTableCells)
        throw resource_error("total_counts_over_copies: grid " + std::to_string(l1) + "x" +
                             std::to_string(l2) +
                             " too large; use the Gaussian statistics method");

    std::vector<std::complex<double>> buf(std::size_t(l1) * l2, {0.0, 0.0});
    for (int i = 0; i < per_copy.rows; ++i)
        for (int j = 0; j < per_copy.cols; ++j)
            buf[std::size_t(i) * l2 + j] = per_copy.at(i, j);

    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        auto* data = reinterpret_cast<fftw_complex*>(buf.data());
        fwd = fftw_plan_dft_2d(l1, l2, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_2d(l1, l2, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(fwd);
    // integer power: branch-free as z^n = |z|^n exp(i n arg z)
    for (auto& z : buf) {
        const double r = std::abs(z);
        const double th = std::arg(z);
        const double rp = std::pow(r, double(n_r));
        z = std::polar(rp, th * double(n_r));
    }
    fftw_execute(bwd);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }

    const double norm = 1.0 / (double(l1) * l2);
    JointCountDistribution out;
    out.rows = l1;
    out.cols = l2;
    out.p.assign(std::size_t(l1) * l2, 0.0);
    for (long i = 0; i < long(l1) * l2; ++i) {
        double value = buf[i].real() * norm;
        if (value < 0.0) value = value > -1e-14 ? 0.0 : value;
        if (value < 0.0)
            throw physicality_error("total_counts_over_copies: negative probability " +
                                    std::to_string(value));
        out.p[i] = value;
    }

    // crop trailing all-but-negligible rows/columns
    std::vector<double> row_mass(l1, 0.0), col_mass(l2, 0.0);
    for (int i = 0; i < l1; ++i)
        for (int j = 0; j < l2; ++j) {
            row_mass[i] += out.at(i, j);
            col_mass[j] += out.at(i, j);
        }
    int r = l1, c = l2;
    double tail = 0.0;
    while (r > 1 && tail + row_mass[r - 1] < 0.25 * kMassTarget) tail += row_mass[--r];
    tail = 0.0;
    while (c > 1 && tail + col_mass[c - 1] < 0.25 * kMassTarget) tail += col_mass[--c];
    JointCountDistribution cropped;
    cropped.rows = r;
    cropped.cols = c;
    cropped.p.resize(std::size_t(r) * c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) cropped.at(i, j) = out.at(i, j);
    cropped.mass_deficit = 1.0 - cropped.mass();
    return cropped;
}

double discrete_conditional_mi(const std::vector<JointCountDistribution>& per_message,
                               std::uint32_t subset_mask, int senders,
                               const std::vector<double>& bit_one_priors) {
    const std::size_t messages = std::size_t(1) << senders;
    if (per_message.size() != messages)
        throw validation_error("discrete_conditional_mi: need one table per message");
    if (subset_mask == 0 || subset_mask >= messages)
        throw validation_error("discrete_conditional_mi: bad subset mask");
    std::vector<double> priors(senders, 0.5);
    if (!bit_one_priors.empty()) {
        if (bit_one_priors.size() != std::size_t(senders))
            throw validation_error("discrete_conditional_mi: prior size mismatch");
        priors = bit_one_priors;
    }
    int rows = 0, cols = 0;
    for (const auto& t : per_message) {
        rows = std::max(rows, t.rows);
        cols = std::max(cols, t.cols);
    }
    // priors factorize, so p(m[J] | m[J^c]) is the product over subset bits
    auto bit_prob = [&](std::uint32_t m, std::uint32_t mask) {
        double p = 1.0;
        for (int k = 0; k < senders; ++k)
            if (mask >> k & 1u) p *= (m >> k & 1u) ? priors[k] : 1.0 - priors[k];
        return p;
    };
    auto table_entropy = [](const JointCountDistribution& t) {
        double h = 0.0;
        for (double x : t.p)
            if (x > 0.0) h -= x * std::log2(x);
        return h;
    };

    const std::uint32_t comp_mask = (std::uint32_t(messages) - 1) & ~subset_mask;
    std::vector<double> mix(std::size_t(rows) * cols);
    double total = 0.0;
    for (std::uint32_t mc = 0;; mc = ((mc | ~comp_mask) + 1) & comp_mask) {
        std::fill(mix.begin(), mix.end(), 0.0);
        double h_components = 0.0;
        for (std::uint32_t mj = 0;; mj = ((mj | ~subset_mask) + 1) & subset_mask) {
            const std::uint32_t m = mc | mj;
            const double pj = bit_prob(m, subset_mask);
            const auto& t = per_message[m];
            for (int i = 0; i < t.rows; ++i)
                for (int j = 0; j < t.cols; ++j)
                    mix[std::size_t(i) * cols + j] += pj * t.at(i, j);
            h_components += pj * table_entropy(t);
            if (mj == subset_mask) break;
        }
        double h_mix = 0.0;
        for (double x : mix)
            if (x > 0.0) h_mix -= x * std::log2(x);
        total += bit_prob(mc, comp_mask) * (h_mix - h_components);
        if (mc == comp_mask) break;
    }
    return std::max(total, 0.0);
}

}  // namespace qmac
