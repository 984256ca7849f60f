#include "qmac/wick.hpp"

#include <cmath>

#include "qmac/errors.hpp"

namespace qmac {

namespace {

constexpr double kMeanTol = 1e-9;

double gaussian_entropy_bits(const Eigen::MatrixXd& cov) {
    const double dim = double(cov.rows());
    return 0.5 * std::log2(std::pow(2.0 * M_PI * M_E, dim) * cov.determinant());
}

// Simpson weights on an npts grid (npts odd).
double simpson_sum_1d(const std::vector<double>& f, double h) {
    double s = f.front() + f.back();
    for (size_t i = 1; i + 1 < f.size(); ++i) s += f[i] * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

NumberStatistics number_statistics(const GaussianState& state, const Eigen::MatrixXd& weights) {
    if (state.max_abs_mean() > kMeanTol)
        throw validation_error("number_statistics: nonzero-mean states unsupported");
    if (weights.cols() != state.modes())
        throw validation_error("number_statistics: weight width must match mode count");
    const ComplexMoments m = state.complex_moments();
    const int n = state.modes();
    Eigen::VectorXd occ(n);
    for (int i = 0; i < n; ++i) occ(i) = m.number(i, i).real();
    Eigen::MatrixXd cov_n(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            cov_n(p, q) = std::norm(m.pair(p, q)) + std::norm(m.number(p, q)) +
                          (p == q ? occ(p) : 0.0);
    NumberStatistics out;
    out.mean = weights * occ;
    out.cov = weights * cov_n * weights.transpose();
    return out;
}

GaussianObservationModel wick_diff_model(const GaussianState& state,
                                         const std::vector<std::pair<int, int>>& arm_pairs,
                                         long n_r) {
    if (n_r < 1) throw validation_error("wick_diff_model: n_r must be >= 1");
    if (arm_pairs.empty()) throw validation_error("wick_diff_model: no arm pairs");
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(arm_pairs.size(), state.modes());
    for (size_t i = 0; i < arm_pairs.size(); ++i) {
        const auto [x, y] = arm_pairs[i];
        if (x == y) throw validation_error("wick_diff_model: arm modes must differ");
        w(i, x) = 1.0;
        w(i, y) = -1.0;
    }
    const NumberStatistics st = number_statistics(state, w);
    return {st.mean, st.cov, n_r};
}

GaussianObservationModel wick_count_model(const GaussianState& state,
                                          const std::vector<int>& modes, long n_r) {
    if (n_r < 1) throw validation_error("wick_count_model: n_r must be >= 1");
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(modes.size(), state.modes());
    for (size_t i = 0; i < modes.size(); ++i) w(i, modes[i]) = 1.0;
    const NumberStatistics st = number_statistics(state, w);
    return {st.mean, st.cov, n_r};
}

double gaussian_mixture_entropy_bits(const std::vector<Eigen::VectorXd>& means,
                                     const std::vector<Eigen::MatrixXd>& covs,
                                     const std::vector<double>& weights, double tol) {
    const size_t k = means.size();
    if (k == 0 || covs.size() != k || weights.size() != k)
        throw validation_error("mixture entropy: component count mismatch");
    const int dim = static_cast<int>(means[0].size());
    if (dim < 1 || dim > 3)
        throw validation_error("mixture entropy: supported dimensions are 1 to 3");

    // whiten with the average covariance so the integrand is O(1) in shape
    Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(dim, dim);
    for (size_t i = 0; i < k; ++i) avg += weights[i] * covs[i];
    Eigen::LLT<Eigen::MatrixXd> llt(avg);
    if (llt.info() != Eigen::Success)
        throw physicality_error("mixture entropy: covariance not positive definite");
    const Eigen::MatrixXd l = llt.matrixL();
    const double log2_det_l = std::log2(l.diagonal().prod());

    std::vector<Eigen::VectorXd> mu(k);
    std::vector<Eigen::MatrixXd> prec(k);
    std::vector<double> amp(k);
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(dim, 1e300);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(dim, -1e300);
    for (size_t i = 0; i < k; ++i) {
        mu[i] = l.triangularView<Eigen::Lower>().solve(means[i] - means[0]);
        const Eigen::MatrixXd c =
            l.triangularView<Eigen::Lower>().solve(
                 l.triangularView<Eigen::Lower>().solve(covs[i]).transpose())
                .transpose();
        prec[i] = c.inverse();
        amp[i] = weights[i] / (std::pow(2.0 * M_PI, 0.5 * dim) * std::sqrt(c.determinant()));
        lo = lo.cwiseMin(mu[i]);
        hi = hi.cwiseMax(mu[i]);
    }
    lo.array() -= 9.0;
    hi.array() += 9.0;

    // flatten the component parameters for the inner loop
    struct Component {
        double mu[3];
        double p[3][3];
        double amp;
    };
    std::vector<Component> comp(k);
    for (size_t i = 0; i < k; ++i) {
        comp[i].amp = amp[i];
        for (int r = 0; r < dim; ++r) {
            comp[i].mu[r] = mu[i](r);
            for (int c = 0; c < dim; ++c) comp[i].p[r][c] = prec[i](r, c);
        }
    }
    auto integrand = [&](const Eigen::VectorXd& x) {
        double p = 0.0;
        for (const Component& g : comp) {
            double q = 0.0;
            for (int r = 0; r < dim; ++r) {
                double row = 0.0;
                for (int c = 0; c < dim; ++c) row += g.p[r][c] * (x(c) - g.mu[c]);
                q += (x(r) - g.mu[r]) * row;
            }
            p += g.amp * std::exp(-0.5 * q);
        }
        return p > 0.0 ? -p * std::log2(p) : 0.0;
    };

    const int npts_start = dim == 3 ? 65 : 129;
    const int npts_cap = dim == 3 ? 513 : 4097;
    double prev = 0.0;
    for (int npts = npts_start;; npts = 2 * npts - 1) {
        Eigen::VectorXd step(dim);
        for (int d = 0; d < dim; ++d) step(d) = (hi(d) - lo(d)) / (npts - 1);
        double h_val;
        if (dim == 1) {
            std::vector<double> f(npts);
            Eigen::VectorXd x(1);
            for (int i = 0; i < npts; ++i) {
                x(0) = lo(0) + i * step(0);
                f[i] = integrand(x);
            }
            h_val = simpson_sum_1d(f, step(0));
        } else if (dim == 2) {
            std::vector<double> rows(npts);
            std::vector<double> f(npts);
            Eigen::VectorXd x(2);
            for (int i = 0; i < npts; ++i) {
                x(0) = lo(0) + i * step(0);
                for (int j = 0; j < npts; ++j) {
                    x(1) = lo(1) + j * step(1);
                    f[j] = integrand(x);
                }
                rows[i] = simpson_sum_1d(f, step(1));
            }
            h_val = simpson_sum_1d(rows, step(0));
        } else {
            std::vector<double> planes(npts);
            std::vector<double> rows(npts);
            std::vector<double> f(npts);
            Eigen::VectorXd x(3);
            for (int i = 0; i < npts; ++i) {
                x(0) = lo(0) + i * step(0);
                for (int j = 0; j < npts; ++j) {
                    x(1) = lo(1) + j * step(1);
                    for (int l = 0; l < npts; ++l) {
                        x(2) = lo(2) + l * step(2);
                        f[l] = integrand(x);
                    }
                    rows[j] = simpson_sum_1d(f, step(2));
                }
                planes[i] = simpson_sum_1d(rows, step(1));
            }
            h_val = simpson_sum_1d(planes, step(0));
        }
        if (npts > npts_start && std::abs(h_val - prev) < 0.5 * tol)
            return h_val + log2_det_l;
        if (npts >= npts_cap)
            throw resource_error("mixture entropy: integration failed to converge");
        prev = h_val;
    }
}

double gaussian_conditional_mi(const std::vector<GaussianObservationModel>& per_message,
                               std::uint32_t subset_mask, int senders,
                               const std::vector<double>& bit_one_priors, double tol) {
    const std::size_t messages = std::size_t(1) << senders;
    if (per_message.size() != messages)
        throw validation_error("gaussian_conditional_mi: need one model per message");
    if (subset_mask == 0 || subset_mask >= messages)
        throw validation_error("gaussian_conditional_mi: bad subset mask");
    std::vector<double> priors(senders, 0.5);
    if (!bit_one_priors.empty()) {
        if (bit_one_priors.size() != std::size_t(senders))
            throw validation_error("gaussian_conditional_mi: prior size mismatch");
        priors = bit_one_priors;
    }
    auto bit_prob = [&](std::uint32_t m, std::uint32_t mask) {
        double p = 1.0;
        for (int k = 0; k < senders; ++k)
            if (mask >> k & 1u) p *= (m >> k & 1u) ? priors[k] : 1.0 - priors[k];
        return p;
    };

    const std::uint32_t comp_mask = (std::uint32_t(messages) - 1) & ~subset_mask;
    double total = 0.0;
    for (std::uint32_t mc = 0;; mc = ((mc | ~comp_mask) + 1) & comp_mask) {
        std::vector<Eigen::VectorXd> means;
        std::vector<Eigen::MatrixXd> covs;
        std::vector<double> ws;
        double h_components = 0.0;
        for (std::uint32_t mj = 0;; mj = ((mj | ~subset_mask) + 1) & subset_mask) {
            const std::uint32_t m = mc | mj;
            const auto& model = per_message[m];
            const double pj = bit_prob(m, subset_mask);
            means.push_back(model.mean);
            covs.push_back(model.cov / double(model.copies));
            ws.push_back(pj);
            h_components += pj * gaussian_entropy_bits(covs.back());
            if (mj == subset_mask) break;
        }
        const double h_mix = gaussian_mixture_entropy_bits(means, covs, ws, 0.25 * tol);
        total += bit_prob(mc, comp_mask) * (h_mix - h_components);
        if (mc == comp_mask) break;
    }
    return std::max(total, 0.0);
}

}  // namespace qmac
