#include "qmac/rate_region.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "qmac/errors.hpp"

namespace qmac {

RateRegion::RateRegion(int s, std::string lab) : senders(s), label(std::move(lab)) {
    if (s < 1 || s > 20) throw validation_error("RateRegion: sender count outside [1, 20]");
    bounds.assign(std::size_t(1) << s, 0.0);
}

void RateRegion::set_bound(std::uint32_t mask, double value) {
    if (mask == 0 || mask >= bounds.size())
        throw validation_error("RateRegion: bad subset mask");
    if (value < 0.0 && value > -1e-12) value = 0.0;
    if (value < 0.0) throw validation_error("RateRegion: negative bound");
    bounds[mask] = value;
}

double RateRegion::max_monotonicity_violation() const {
    double worst = -std::numeric_limits<double>::infinity();
    const std::uint32_t full = (1u << senders) - 1;
    for (std::uint32_t j = 1; j <= full; ++j)
        for (int k = 0; k < senders; ++k)
            if (!(j >> k & 1u)) worst = std::max(worst, bounds[j] - bounds[j | (1u << k)]);
    return worst;
}

RateRegion RateRegion::scaled(double factor) const {
    RateRegion out = *this;
    for (double& b : out.bounds) b *= factor;
    return out;
}

double RateRegion::equal_rate_point() const {
    double r = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask < bounds.size(); ++mask)
        r = std::min(r, bounds[mask] / double(std::popcount(mask)));
    return r;
}

RateRegion RateRegion::permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != senders)
        throw validation_error("RateRegion: permutation size mismatch");
    RateRegion out(senders, label);
    for (std::uint32_t mask = 1; mask < bounds.size(); ++mask) {
        std::uint32_t src = 0;
        for (int k = 0; k < senders; ++k)
            if (mask >> k & 1u) src |= 1u << perm[k];
        out.bounds[mask] = bounds[src];
    }
    return out;
}

namespace {

std::vector<double> effective_scales(const RateRegion& region,
                                     const std::vector<double>& axis_scale) {
    if (axis_scale.empty()) return std::vector<double>(region.senders, 1.0);
    if (static_cast<int>(axis_scale.size()) != region.senders)
        throw validation_error("region geometry: axis scale size mismatch");
    for (double s : axis_scale)
        if (!(s > 0.0)) throw validation_error("region geometry: axis scales must be positive");
    return axis_scale;
}

bool nearly_equal(double a, double b, double scale) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, scale);
}

}  // namespace

Polygon2D region_polygon(const RateRegion& region, const std::vector<double>& axis_scale) {
    if (region.senders != 2) throw validation_error("region_polygon: need a 2-sender region");
    const auto scale = effective_scales(region, axis_scale);
    const double b1 = region.bound(1), b2 = region.bound(2), b12 = region.bound(3);
    const double r1 = std::min(b1, b12);
    const double r2 = std::min(b2, b12);
    std::vector<std::array<double, 2>> v;
    v.push_back({0.0, 0.0});
    v.push_back({r1, 0.0});
    if (r1 + r2 > b12) {
        v.push_back({r1, b12 - r1});
        v.push_back({b12 - r2, r2});
    } else {
        v.push_back({r1, r2});
    }
    v.push_back({0.0, r2});
    Polygon2D out;
    const double mag = std::max({b1, b2, b12, 1e-300});
    for (auto& p : v) {
        if (!out.vertices.empty() && nearly_equal(p[0], out.vertices.back()[0], mag) &&
            nearly_equal(p[1], out.vertices.back()[1], mag))
            continue;
        out.vertices.push_back({p[0] / scale[0], p[1] / scale[1]});
    }
    while (out.vertices.size() > 1 &&
           nearly_equal(out.vertices.back()[0], out.vertices.front()[0], mag) &&
           nearly_equal(out.vertices.back()[1], out.vertices.front()[1], mag))
        out.vertices.pop_back();
    return out;
}

Mesh3D region_mesh(const RateRegion& region, const std::vector<double>& axis_scale) {
    if (region.senders != 3) throw validation_error("region_mesh: need a 3-sender region");
    const auto scale = effective_scales(region, axis_scale);

    // half-spaces n.x <= c: seven subset constraints plus x_k >= 0
    std::vector<Eigen::Vector3d> normals;
    std::vector<double> offsets;
    for (std::uint32_t mask = 1; mask < 8; ++mask) {
        Eigen::Vector3d n((mask & 1) ? 1.0 : 0.0, (mask & 2) ? 1.0 : 0.0,
                          (mask & 4) ? 1.0 : 0.0);
        normals.push_back(n);
        offsets.push_back(region.bound(mask));
    }
    for (int k = 0; k < 3; ++k) {
        Eigen::Vector3d n = Eigen::Vector3d::Zero();
        n(k) = -1.0;
        normals.push_back(n);
        offsets.push_back(0.0);
    }

    const double mag = std::max(region.bound(7), 1e-300);
    const int np = static_cast<int>(normals.size());
    std::vector<Eigen::Vector3d> verts;
    for (int a = 0; a < np; ++a)
        for (int b = a + 1; b < np; ++b)
            for (int c = b + 1; c < np; ++c) {
                Eigen::Matrix3d m;
                m.row(0) = normals[a].transpose();
                m.row(1) = normals[b].transpose();
                m.row(2) = normals[c].transpose();
                if (std::abs(m.determinant()) < 1e-12) continue;
                Eigen::Vector3d x =
                    m.colPivHouseholderQr().solve(Eigen::Vector3d(offsets[a], offsets[b], offsets[c]));
                bool ok = true;
                for (int h = 0; h < np && ok; ++h)
                    ok = normals[h].dot(x) <= offsets[h] + 1e-9 * std::max(1.0, mag);
                if (!ok) continue;
                bool dup = false;
                for (const auto& v : verts)
                    if ((v - x).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, mag)) {
                        dup = true;
                        break;
                    }
                if (!dup) verts.push_back(x);
            }

    Mesh3D mesh;
    for (const auto& v : verts)
        mesh.vertices.push_back({v(0) / scale[0], v(1) / scale[1], v(2) / scale[2]});

    // one fan of triangles per active facet
    for (int h = 0; h < np; ++h) {
        std::vector<int> on;
        for (size_t i = 0; i < verts.size(); ++i)
            if (std::abs(normals[h].dot(verts[i]) - offsets[h]) <= 1e-8 * std::max(1.0, mag))
                on.push_back(static_cast<int>(i));
        if (on.size() < 3) continue;
        Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
        for (int i : on) centroid += verts[i];
        centroid /= double(on.size());
        // order vertices by angle in the facet plane
        Eigen::Vector3d u = (verts[on[0]] - centroid).normalized();
        Eigen::Vector3d w = normals[h].normalized().cross(u);
        std::sort(on.begin(), on.end(), [&](int lhs, int rhs) {
            const Eigen::Vector3d dl = verts[lhs] - centroid, dr = verts[rhs] - centroid;
            return std::atan2(w.dot(dl), u.dot(dl)) < std::atan2(w.dot(dr), u.dot(dr));
        });
        for (size_t t = 1; t + 1 < on.size(); ++t)
            mesh.triangles.push_back({on[0], on[t], on[t + 1]});
    }
    return mesh;
}

}  // namespace qmac
