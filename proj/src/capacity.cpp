#include "qmac/capacity.hpp"

#include <cmath>

#include "qmac/errors.hpp"

namespace qmac {

namespace {

double coherent_bound(const MacScenario& scn, std::uint32_t mask) {
    double x = 0.0;
    for (int k = 0; k < scn.senders(); ++k)
        if (mask >> k & 1u) x += scn.tau * scn.eta[k] * scn.n_s[k];
    return thermal_entropy_increment_bits(scn.n_b, x);
}

// Fill intermediate subsets from singleton and full-set constraints:
// bounds[J] = min(sum of member singletons, full-set bound).
void fill_intermediate(RateRegion& region, const std::vector<double>& singles,
                       double full_bound) {
    const std::uint32_t full = (1u << region.senders) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        double sum = 0.0;
        for (int k = 0; k < region.senders; ++k)
            if (mask >> k & 1u) sum += singles[k];
        region.set_bound(mask, std::min(sum, full_bound));
    }
}

}  // namespace

RateRegion coherent_region(const MacScenario& scn) {
    scn.validate();
    RateRegion region(scn.senders(), "coherent");
    for (std::uint32_t mask = 1; mask < region.bounds.size(); ++mask)
        region.set_bound(mask, coherent_bound(scn, mask));
    return region;
}

RateRegion classical_outer_region(const MacScenario& scn) {
    scn.validate();
    RateRegion region(scn.senders(), "classical-outer");
    std::vector<double> singles(scn.senders());
    for (int k = 0; k < scn.senders(); ++k)
        singles[k] = thermal_entropy_increment_bits(scn.n_b, scn.tau * scn.n_s[k]);
    fill_intermediate(region, singles, coherent_bound(scn, (1u << scn.senders()) - 1));
    return region;
}

double ea_capacity_single(double n_s, double tau, double n_b) {
    if (n_s < 0.0) throw validation_error("ea_capacity_single: negative brightness");
    if (tau < 0.0 || tau > 1.0) throw validation_error("ea_capacity_single: tau outside [0, 1]");
    if (n_b < 0.0) throw validation_error("ea_capacity_single: negative noise");
    if (n_s == 0.0) return 0.0;
    const double n_out = tau * n_s + n_b;
    const double trace = n_s + n_out + 1.0;
    const double d = std::sqrt(trace * trace - 4.0 * tau * n_s * (n_s + 1.0));
    const double a_plus = std::max(0.5 * (d - 1.0 + (n_out - n_s)), 0.0);
    const double a_minus = std::max(0.5 * (d - 1.0 - (n_out - n_s)), 0.0);
    // g(n_s) - g(a_minus) and g(n_out) - g(a_plus) share the increment
    // delta = (trace - d)/2, written cancellation-free
    const double delta = 2.0 * tau * n_s * (n_s + 1.0) / (trace + d);
    return thermal_entropy_increment_bits(a_minus, delta) +
           thermal_entropy_increment_bits(a_plus, delta);
}

RateRegion ea_outer_region(const MacScenario& scn) {
    scn.validate();
    RateRegion region(scn.senders(), "ea-outer");
    std::vector<double> singles(scn.senders());
    double mixed = 0.0;
    for (int k = 0; k < scn.senders(); ++k) {
        singles[k] = ea_capacity_single(scn.n_s[k], scn.tau, scn.n_b);
        mixed += scn.eta[k] * scn.n_s[k];
    }
    fill_intermediate(region, singles, ea_capacity_single(mixed, scn.tau, scn.n_b));
    return region;
}

RateRegion tmsv_region(const MacScenario& scn) {
    scn.validate();
    const int s = scn.senders();
    if (s > 20) throw validation_error("tmsv_region: more than 20 senders (2^s bounds)");
    const GaussianState out = mac_output_state(scn, std::vector<double>(s, 0.0));
    // modes: 0 = B, 1..s = idlers
    std::vector<int> idlers(s);
    for (int k = 0; k < s; ++k) idlers[k] = k + 1;
    const double s_idlers = out.entropy_bits(idlers);
    std::vector<int> all(s + 1);
    for (int k = 0; k <= s; ++k) all[k] = k;
    const double s_total = out.entropy_bits(all);

    RateRegion region(s, "tmsv");
    const std::uint32_t full = (1u << s) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::vector<int> rest_idlers;   // idlers of the complement J^c
        std::vector<int> rest_with_b = {0};
        for (int k = 0; k < s; ++k)
            if (!(mask >> k & 1u)) {
                rest_idlers.push_back(k + 1);
                rest_with_b.push_back(k + 1);
            }
        const double s_bjc = out.entropy_bits(rest_with_b);
        const double s_jc = rest_idlers.empty() ? 0.0 : out.entropy_bits(rest_idlers);
        region.set_bound(mask, s_idlers + s_bjc - s_total - s_jc);
    }
    return region;
}

double asymptotic_capacity_ratio(double n_s, double eta, double n_b) {
    if (!(n_s > 0.0)) throw validation_error("asymptotic_capacity_ratio: need n_s > 0");
    if (!(eta > 0.0 && eta <= 1.0))
        throw validation_error("asymptotic_capacity_ratio: need 0 < eta <= 1");
    if (!(n_b > 0.0)) throw validation_error("asymptotic_capacity_ratio: need n_b > 0");
    return std::log(1.0 / n_s) / (eta * (1.0 + n_b) * std::log1p(1.0 / n_b));
}

}  // namespace qmac
