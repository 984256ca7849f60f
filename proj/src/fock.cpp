#include "qmac/fock.hpp"

#include <cmath>
#include <complex>

#include "qmac/errors.hpp"

namespace qmac {

namespace {

constexpr long kMaxAmplitudes = 1L << 23;

Eigen::MatrixXcd lowering(int dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

// Ladder operators of a two-mode subspace with basis index n_a * dim_b + n_b.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> pair_lowering(int da, int db) {
    const Eigen::MatrixXcd a = lowering(da), b = lowering(db);
    Eigen::MatrixXcd a1 = Eigen::MatrixXcd::Zero(da * db, da * db);
    Eigen::MatrixXcd a2 = Eigen::MatrixXcd::Zero(da * db, da * db);
    for (int na = 0; na < da; ++na)
        for (int nb = 0; nb < db; ++nb) {
            if (na > 0) a1((na - 1) * db + nb, na * db + nb) = a(na - 1, na);
            if (nb > 0) a2(na * db + nb - 1, na * db + nb) = b(nb - 1, nb);
        }
    return {a1, a2};
}

// exp(K) for anti-Hermitian K via the Hermitian eigendecomposition of iK.
Eigen::MatrixXcd exp_anti_hermitian(const Eigen::MatrixXcd& k) {
    const std::complex<double> iu(0.0, 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(iu * k);
    Eigen::VectorXcd ph(es.eigenvalues().size());
    for (Eigen::Index n = 0; n < ph.size(); ++n)
        ph(n) = std::exp(-iu * es.eigenvalues()(n));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

int thermal_dim(double mean) {
    if (mean <= 1e-12) return 2;
    const int d = static_cast<int>(std::ceil(-12.0 * std::log(10.0) /
                                             std::log(mean / (1.0 + mean)))) + 1;
    return std::max(4, d);
}

}  // namespace

long FockSim::stride(int mode) const {
    long s = 1;
    for (int m = modes() - 1; m > mode; --m) s *= dims_[m];
    return s;
}

int FockSim::add_mode(int dim) {
    if (dim < 2) throw validation_error("FockSim: mode dimension must be >= 2");
    if (psi_.size() * static_cast<long>(dim) > kMaxAmplitudes)
        throw resource_error("FockSim: state too large; lower the cutoff or mode count");
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(psi_.size() * dim);
    // new mode is the fastest-varying index and starts in |0>
    for (long i = 0; i < psi_.size(); ++i) next(i * dim) = psi_(i);
    psi_ = std::move(next);
    dims_.push_back(dim);
    return modes() - 1;
}

int FockSim::add_thermal_purified(double mean, int dim) {
    const int m = add_mode(dim);
    add_mode(dim);
    if (mean <= 0.0) return m;
    // write the squeezed-pair amplitudes directly; both new modes are the
    // two fastest indices, so each old amplitude sits at a stride of dim^2
    std::vector<double> amp(dim);
    for (int n = 0; n < dim; ++n)
        amp[n] = std::sqrt(std::pow(mean / (1.0 + mean), n) / (1.0 + mean));
    const long pair_stride = long(dim) * dim;
    for (long base = 0; base < psi_.size(); base += pair_stride) {
        const std::complex<double> value = psi_(base);
        for (int n = 0; n < dim; ++n) psi_(base + n * (dim + 1)) = value * amp[n];
    }
    return m;
}

void FockSim::apply_two_mode(const Eigen::MatrixXcd& u, int i, int j) {
    const int di = dims_[i], dj = dims_[j];
    const long si = stride(i), sj = stride(j);
    const long total = psi_.size();
    Eigen::VectorXcd block(di * dj);
    // walk every configuration of the remaining modes: those are exactly the
    // full indices whose i- and j-digits are zero
    for (long base = 0; base < total; ++base) {
        if ((base / si) % di != 0 || (base / sj) % dj != 0) continue;
        for (int a = 0; a < di; ++a)
            for (int b = 0; b < dj; ++b) block(a * dj + b) = psi_(base + a * si + b * sj);
        block = (u * block).eval();
        for (int a = 0; a < di; ++a)
            for (int b = 0; b < dj; ++b) psi_(base + a * si + b * sj) = block(a * dj + b);
    }
}

void FockSim::beamsplitter(double eta, int i, int j) {
    if (eta < 0.0 || eta > 1.0) throw validation_error("FockSim: eta outside [0, 1]");
    if (i == j || i < 0 || j < 0 || i >= modes() || j >= modes())
        throw validation_error("FockSim: bad beamsplitter modes");
    const double theta = std::atan2(std::sqrt(1.0 - eta), std::sqrt(eta));
    if (theta == 0.0) return;
    const auto [a1, a2] = pair_lowering(dims_[i], dims_[j]);
    const Eigen::MatrixXcd k = theta * (a1.adjoint() * a2 - a1 * a2.adjoint());
    apply_two_mode(exp_anti_hermitian(k), i, j);
}

void FockSim::phase_shift(double theta, int mode) {
    if (mode < 0 || mode >= modes()) throw validation_error("FockSim: bad phase mode");
    const long s = stride(mode);
    const std::complex<double> iu(0.0, 1.0);
    std::vector<std::complex<double>> ph(dims_[mode]);
    for (int n = 0; n < dims_[mode]; ++n) ph[n] = std::exp(iu * (theta * n));
    for (long idx = 0; idx < psi_.size(); ++idx) psi_(idx) *= ph[(idx / s) % dims_[mode]];
}

void FockSim::opa(double gain, int i, int j) {
    if (gain < 1.0) throw validation_error("FockSim: opa gain must be >= 1");
    if (i == j || i < 0 || j < 0 || i >= modes() || j >= modes())
        throw validation_error("FockSim: bad opa modes");
    const double r = std::acosh(std::sqrt(gain));
    if (r == 0.0) return;
    const auto [a1, a2] = pair_lowering(dims_[i], dims_[j]);
    const Eigen::MatrixXcd k = r * (a1.adjoint() * a2.adjoint() - a1 * a2);
    apply_two_mode(exp_anti_hermitian(k), i, j);
}

ComplexMoments FockSim::moments(const std::vector<int>& which) const {
    const int m = static_cast<int>(which.size());
    std::vector<Eigen::VectorXcd> lowered(m);
    for (int k = 0; k < m; ++k) {
        const int mode = which[k];
        if (mode < 0 || mode >= modes()) throw validation_error("FockSim: bad moment mode");
        const long s = stride(mode);
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(psi_.size());
        for (long idx = 0; idx < psi_.size(); ++idx) {
            const int n = static_cast<int>((idx / s) % dims_[mode]);
            if (n > 0) v(idx - s) = std::sqrt(double(n)) * psi_(idx);
        }
        lowered[k] = std::move(v);
    }
    ComplexMoments out;
    out.number.resize(m, m);
    out.pair.resize(m, m);
    for (int p = 0; p < m; ++p) {
        for (int q = 0; q < m; ++q) {
            out.number(p, q) = lowered[p].dot(lowered[q]);  // <a_p^dag a_q>
            // <a_p a_q> = <psi| a_p a_q |psi>
            const int mode = which[p];
            const long s = stride(mode);
            std::complex<double> acc(0.0, 0.0);
            const Eigen::VectorXcd& w = lowered[q];
            for (long idx = 0; idx < psi_.size(); ++idx) {
                const int n = static_cast<int>((idx / s) % dims_[mode]);
                if (n > 0) acc += std::conj(psi_(idx - s)) * std::sqrt(double(n)) * w(idx);
            }
            out.pair(p, q) = acc;
        }
    }
    return out;
}

Eigen::MatrixXd FockSim::joint_counts(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= modes() || j >= modes())
        throw validation_error("FockSim: bad joint_counts modes");
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dims_[i], dims_[j]);
    const long si = stride(i), sj = stride(j);
    for (long idx = 0; idx < psi_.size(); ++idx)
        p((idx / si) % dims_[i], (idx / sj) % dims_[j]) += std::norm(psi_(idx));
    return p;
}

std::vector<double> FockSim::counts(int mode) const {
    if (mode < 0 || mode >= modes()) throw validation_error("FockSim: bad counts mode");
    std::vector<double> p(dims_[mode], 0.0);
    const long s = stride(mode);
    for (long idx = 0; idx < psi_.size(); ++idx)
        p[(idx / s) % dims_[mode]] += std::norm(psi_(idx));
    return p;
}

double FockSim::entropy_bits(const std::vector<int>& which) const {
    long dim_sub = 1;
    for (int mode : which) {
        if (mode < 0 || mode >= modes()) throw validation_error("FockSim: bad entropy mode");
        dim_sub *= dims_[mode];
    }
    if (dim_sub > 4096) throw resource_error("FockSim: entropy subset too large");
    const long dim_rest = psi_.size() / dim_sub;
    Eigen::MatrixXcd amp = Eigen::MatrixXcd::Zero(dim_sub, dim_rest);
    std::vector<char> in_sub(modes(), 0);
    for (int mode : which) in_sub[mode] = 1;
    for (long idx = 0; idx < psi_.size(); ++idx) {
        long r = 0, t = 0;
        // subset digits in the order given by `which`
        for (int mode : which) r = r * dims_[mode] + (idx / stride(mode)) % dims_[mode];
        for (int mode = 0; mode < modes(); ++mode)
            if (!in_sub[mode]) t = t * dims_[mode] + (idx / stride(mode)) % dims_[mode];
        amp(r, t) = psi_(idx);
    }
    Eigen::MatrixXcd rho = amp * amp.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index n = 0; n < es.eigenvalues().size(); ++n) {
        const double lam = es.eigenvalues()(n);
        if (lam > 1e-300) s -= lam * std::log2(lam);
    }
    return s;
}

double FockSim::trace_deficit() const {
    double deficit = std::abs(1.0 - psi_.squaredNorm());
    for (int mode = 0; mode < modes(); ++mode) deficit += counts(mode).back();
    return deficit;
}

FockOracle::FockOracle(const std::vector<CircuitElement>& circuit, int cutoff) {
    if (cutoff < 2) throw validation_error("FockOracle: cutoff must be >= 2");
    for (const auto& elem : circuit) {
        std::visit(
            [&](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, AddVacuum>) {
                    map_.push_back(sim_.add_mode(cutoff));
                } else if constexpr (std::is_same_v<T, AddThermal>) {
                    map_.push_back(sim_.add_thermal_purified(
                        e.mean_photons, std::max(cutoff, thermal_dim(e.mean_photons))));
                } else if constexpr (std::is_same_v<T, Beamsplitter>) {
                    sim_.beamsplitter(e.eta, map_.at(e.mode_a), map_.at(e.mode_b));
                } else if constexpr (std::is_same_v<T, PhaseShift>) {
                    sim_.phase_shift(e.theta, map_.at(e.mode));
                } else if constexpr (std::is_same_v<T, Opa>) {
                    sim_.opa(e.gain, map_.at(e.mode_a), map_.at(e.mode_b));
                } else if constexpr (std::is_same_v<T, Loss>) {
                    if (e.tau >= 1.0) return;
                    const double env_mean = e.n_b / (1.0 - e.tau);
                    const int env =
                        sim_.add_thermal_purified(env_mean, thermal_dim(env_mean));
                    sim_.beamsplitter(e.tau, map_.at(e.mode), env);
                } else {  // Discard: remap only
                    map_.erase(map_.begin() + e.mode);
                }
            },
            elem);
    }
    if (sim_.trace_deficit() > 1e-6)
        throw resource_error("FockOracle: trace deficit above 1e-6; cutoff too small");
}

std::vector<int> FockOracle::remap(const std::vector<int>& modes) const {
    std::vector<int> out;
    out.reserve(modes.size());
    for (int m : modes) out.push_back(map_.at(m));
    return out;
}

ComplexMoments FockOracle::moments(const std::vector<int>& modes) const {
    return sim_.moments(remap(modes));
}

Eigen::MatrixXd FockOracle::joint_counts(int a, int b) const {
    return sim_.joint_counts(map_.at(a), map_.at(b));
}

std::vector<double> FockOracle::counts(int mode) const { return sim_.counts(map_.at(mode)); }

double FockOracle::entropy_bits(const std::vector<int>& modes) const {
    return sim_.entropy_bits(remap(modes));
}

}  // namespace qmac
