#include "icc/gaze.hpp"

#include "icc/error.hpp"

#include <algorithm>
#include <numeric>

namespace icc {

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

struct DisjointSets {
    std::vector<std::size_t> parent;

    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

struct Piece {
    ConvexPolygon polygon;
    AreaCentroid ac;
    std::pair<int, int> persons;
};

}  // namespace

std::optional<GazeRay> gaze_vector(const PersonPose& pose, double correction, int person_id,
                                   double min_confidence) {
    const Keypoint& nose = pose[body25::kNose];
    const Keypoint& neck = pose[body25::kNeck];
    const Keypoint& hip = pose[body25::kMidHip];
    if (!nose.detected(min_confidence) || !neck.detected(min_confidence) ||
        !hip.detected(min_confidence))
        return std::nullopt;

    const Vec2 raw = midpoint(nose.position, hip.position) - neck.position;
    if (raw.x == 0.0 && raw.y == 0.0)
        throw DegenerateGeometry("gaze_vector: nose/mid-hip midpoint coincides with the neck");

    const double turn = -sign(raw.y) * sign(raw.x) * correction;
    return GazeRay{neck.position, normalize_direction(Angle{angle_of(raw).degrees + turn}),
                   person_id};
}

GazeCone build_cone(const GazeRay& ray, double opening, double radius, double arc_step) {
    if (!(opening > 0.0 && opening < 180.0))
        throw InvalidParameter("build_cone: opening must lie in (0, 180)");
    return GazeCone{ray, sector_polygon(ray.origin, ray.direction, opening / 2.0, radius, arc_step),
                    opening};
}

std::vector<ActionRegion> intersect_cones(std::span<const GazeCone> cones, double min_piece_area) {
    if (cones.size() < 2) return {};

    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < cones.size(); ++i) {
        for (std::size_t j = i + 1; j < cones.size(); ++j) {
            const int pi = cones[i].ray.person_id;
            const int pj = cones[j].ray.person_id;
            if (pi == pj) continue;
            auto overlap = clip_convex(cones[i].polygon, cones[j].polygon);
            if (!overlap) continue;
            const AreaCentroid ac = area_centroid(*overlap);
            if (ac.area < min_piece_area) continue;
            pieces.push_back({std::move(*overlap), ac, {std::min(pi, pj), std::max(pi, pj)}});
        }
    }

    DisjointSets sets(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j)
            if (clip_convex(pieces[i].polygon, pieces[j].polygon)) sets.unite(i, j);

    std::vector<ActionRegion> regions;
    std::vector<std::size_t> slot(pieces.size(), SIZE_MAX);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const std::size_t root = sets.find(i);
        if (slot[root] == SIZE_MAX) {
            slot[root] = regions.size();
            regions.emplace_back();
        }
        ActionRegion& region = regions[slot[root]];
        region.polygons.push_back(pieces[i].polygon);
        region.contributing_pairs.push_back(pieces[i].persons);
        const double w = pieces[i].ac.area;
        region.centroid = region.centroid + w * pieces[i].ac.centroid;
        region.area += w;
    }
    for (auto& region : regions) {
        region.centroid = (1.0 / region.area) * region.centroid;
        std::sort(region.contributing_pairs.begin(), region.contributing_pairs.end());
        region.contributing_pairs.erase(
            std::unique(region.contributing_pairs.begin(), region.contributing_pairs.end()),
            region.contributing_pairs.end());
    }
    std::sort(regions.begin(), regions.end(), [](const ActionRegion& a, const ActionRegion& b) {
        if (a.centroid.x != b.centroid.x) return a.centroid.x < b.centroid.x;
        return a.centroid.y < b.centroid.y;
    });
    return regions;
}

Angle aggregate_slope(std::span<const GazeRay> rays) {
    if (rays.empty()) throw InvalidParameter("aggregate_slope: no rays");
    double sum = 0.0;
    for (const auto& r : rays) sum += map_to_half_plane(r.direction).degrees;
    return map_to_half_plane(Angle{sum / static_cast<double>(rays.size())});
}

bool slopes_wrap(std::span<const GazeRay> rays) {
    if (rays.empty()) return false;
    double lo = 90.0, hi = -90.0;
    for (const auto& r : rays) {
        const double s = map_to_half_plane(r.direction).degrees;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return hi - lo > 90.0;
}

std::vector<ActionLine> action_lines(std::span<const ActionRegion> regions, Angle slope) {
    const Angle folded = map_to_half_plane(slope);
    std::vector<ActionLine> out;
    out.reserve(regions.size());
    for (const auto& r : regions) out.push_back({r.centroid, folded});
    return out;
}

}  // namespace icc
