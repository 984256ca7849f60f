#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace qmac {

/// Rate region of an s-sender channel cut out by subset-sum inequalities
/// sum_{i in J} R_i <= bounds[J], indexed by the subset bitmask J
/// (bit k set <=> sender k in J).  bounds[0] = 0 by convention.
struct RateRegion {
    int senders = 0;
    std::string label;
    std::vector<double> bounds;  // size 2^senders

    RateRegion() = default;
    RateRegion(int s, std::string lab);

    double bound(std::uint32_t subset_mask) const { return bounds.at(subset_mask); }
    void set_bound(std::uint32_t subset_mask, double value);

    /// Largest violation of subset monotonicity (J within J' but
    /// bounds[J] > bounds[J']); <= 0 means monotone.
    double max_monotonicity_violation() const;

    /// Every bound multiplied by `factor` (e.g. 0.5 for qubit rates).
    RateRegion scaled(double factor) const;

    /// Largest r such that (r, ..., r) lies in the region.
    double equal_rate_point() const;

    /// Region with senders relabeled: new index k <- old index perm[k].
    RateRegion permuted(const std::vector<int>& perm) const;
};

struct Polygon2D {
    std::vector<std::array<double, 2>> vertices;  // counterclockwise, closed implicitly
};

struct Mesh3D {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 3>> triangles;
};

/// Boundary polygon of a two-sender region {R >= 0 : subset sums <= bounds},
/// optionally with axis k divided by axis_scale[k].
Polygon2D region_polygon(const RateRegion& region,
                         const std::vector<double>& axis_scale = {});

/// Triangulated boundary surface of a three-sender region.
Mesh3D region_mesh(const RateRegion& region, const std::vector<double>& axis_scale = {});

}  // namespace qmac
