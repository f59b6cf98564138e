#include "icc/geometry.hpp"

#include "icc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace icc {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

double bbox_diagonal_sq(std::span<const Point2> pts) {
    if (pts.empty()) return 0.0;
    double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
    for (const auto& p : pts) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double dx = max_x - min_x, dy = max_y - min_y;
    return dx * dx + dy * dy;
}

// Cross products below this are treated as collinear.
double collinear_tolerance(std::span<const Point2> pts) {
    return 1e-9 * bbox_diagonal_sq(pts);
}

double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

// Drops repeated and collinear vertices from a closed ring.
std::vector<Point2> simplify_ring(std::vector<Point2> ring) {
    const double tol = collinear_tolerance(ring);
    const double dup_sq = 1e-18 * std::max(1.0, bbox_diagonal_sq(ring));
    bool changed = true;
    while (changed && ring.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < ring.size() && ring.size() >= 3; ++i) {
            const std::size_t n = ring.size();
            const Point2 prev = ring[(i + n - 1) % n];
            const Point2 cur = ring[i];
            const Point2 next = ring[(i + 1) % n];
            const Vec2 d = cur - prev;
            if (dot(d, d) <= dup_sq || std::abs(orient(prev, cur, next)) <= tol) {
                ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                --i;
            }
        }
    }
    return ring;
}

}  // namespace

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 v) { return std::hypot(v.x, v.y); }
double distance(Point2 a, Point2 b) { return norm(b - a); }
Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double Angle::radians() const { return degrees / kDegPerRad; }

Vec2 Angle::unit() const {
    const double r = radians();
    return {std::cos(r), std::sin(r)};
}

Angle angle_of(Vec2 v) {
    if (v.x == 0.0 && v.y == 0.0) throw DegenerateGeometry("angle_of: zero vector");
    if (!is_finite(v)) throw DegenerateGeometry("angle_of: non-finite vector");
    // atan2 already lands in [-180, 180]; only -180 needs folding.
    return normalize_direction(Angle{std::atan2(v.y, v.x) * kDegPerRad});
}

Angle normalize_direction(Angle a) {
    double d = std::fmod(a.degrees, 360.0);
    if (d > 180.0) d -= 360.0;
    if (d <= -180.0) d += 360.0;
    return Angle{d};
}

Angle map_to_half_plane(Angle a) {
    double d = std::fmod(a.degrees, 180.0);
    if (d > 90.0) d -= 180.0;
    if (d <= -90.0) d += 180.0;
    return Angle{d};
}

double signed_area(std::span<const Point2> ring) {
    double twice = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) twice += cross(ring[i], ring[(i + 1) % n]);
    return 0.5 * twice;
}

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3)
        throw DegenerateGeometry("convex polygon needs at least 3 vertices, got " +
                                 std::to_string(vertices_.size()));
    for (const auto& v : vertices_)
        if (!is_finite(v)) throw DegenerateGeometry("convex polygon has a non-finite vertex");
    if (signed_area(vertices_) <= 0.0)
        throw DegenerateGeometry("convex polygon must have positive area and orientation");
    const double tol = collinear_tolerance(vertices_);
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (orient(vertices_[i], vertices_[(i + 1) % n], vertices_[(i + 2) % n]) < -tol)
            throw DegenerateGeometry("polygon is not convex");
    }
}

bool ConvexPolygon::contains(Point2 p, double tolerance) const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = vertices_[i];
        const Point2 b = vertices_[(i + 1) % n];
        const double len = distance(a, b);
        if (len == 0.0) continue;
        // Signed distance of p from edge a->b, negative outside.
        if (orient(a, b, p) / len < -tolerance) return false;
    }
    return true;
}

ConvexPolygon::Bounds ConvexPolygon::bounds() const {
    Bounds b{vertices_[0].x, vertices_[0].y, vertices_[0].x, vertices_[0].y};
    for (const auto& v : vertices_) {
        b.min_x = std::min(b.min_x, v.x);
        b.min_y = std::min(b.min_y, v.y);
        b.max_x = std::max(b.max_x, v.x);
        b.max_y = std::max(b.max_y, v.y);
    }
    return b;
}

ConvexPolygon convex_hull(std::span<const Point2> points) {
    std::vector<Point2> pts(points.begin(), points.end());
    for (const auto& p : pts)
        if (!is_finite(p)) throw DegenerateGeometry("convex_hull: non-finite point");
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw DegenerateGeometry("convex_hull: fewer than 3 distinct points");

    const double tol = collinear_tolerance(pts);
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= tol) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        const Point2 p = pts[i];
        while (k >= lower && orient(hull[k - 2], hull[k - 1], p) <= tol) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw DegenerateGeometry("convex_hull: all points are collinear");
    return ConvexPolygon(std::move(hull));
}

ConvexPolygon scale_polygon(const ConvexPolygon& polygon, double sx, double sy, Point2 center) {
    if (!(sx > 0.0) || !(sy > 0.0))
        throw InvalidParameter("scale_polygon: scale factors must be positive");
    std::vector<Point2> out;
    out.reserve(polygon.size());
    for (const auto& v : polygon.vertices())
        out.push_back({center.x + sx * (v.x - center.x), center.y + sy * (v.y - center.y)});
    return ConvexPolygon(std::move(out));
}

std::optional<ConvexPolygon> clip_convex(const ConvexPolygon& subject,
                                         const ConvexPolygon& clip) {
    std::vector<Point2> output = subject.vertices();
    const auto& edges = clip.vertices();
    const std::size_t m = edges.size();

    for (std::size_t e = 0; e < m && !output.empty(); ++e) {
        const Point2 a = edges[e];
        const Point2 b = edges[(e + 1) % m];
        const std::vector<Point2> input = std::move(output);
        output.clear();
        const std::size_t n = input.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 cur = input[i];
            const Point2 prev = input[(i + n - 1) % n];
            const double s_cur = orient(a, b, cur);
            const double s_prev = orient(a, b, prev);
            const bool in_cur = s_cur >= 0.0;
            const bool in_prev = s_prev >= 0.0;
            if (in_cur != in_prev) {
                const double t = s_prev / (s_prev - s_cur);
                output.push_back(prev + t * (cur - prev));
            }
            if (in_cur) output.push_back(cur);
        }
    }

    output = simplify_ring(std::move(output));
    if (output.size() < 3) return std::nullopt;

    // Overlaps thinner than this relative to the inputs are numerical slivers.
    const double scale = std::min(area_centroid(subject).area, area_centroid(clip).area);
    const double area = signed_area(output);
    if (!(area > 1e-12 * scale)) return std::nullopt;
    try {
        return ConvexPolygon(std::move(output));
    } catch (const DegenerateGeometry&) {
        return std::nullopt;
    }
}

AreaCentroid area_centroid(const ConvexPolygon& polygon) {
    const auto& v = polygon.vertices();
    const std::size_t n = v.size();
    // Shift to the first vertex to keep the products well conditioned.
    const Point2 o = v[0];
    double twice_area = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = v[i] - o;
        const Point2 q = v[(i + 1) % n] - o;
        const double c = cross(p, q);
        twice_area += c;
        cx += (p.x + q.x) * c;
        cy += (p.y + q.y) * c;
    }
    if (!(twice_area > 0.0)) throw DegenerateGeometry("area_centroid: zero-area polygon");
    return {0.5 * twice_area, {o.x + cx / (3.0 * twice_area), o.y + cy / (3.0 * twice_area)}};
}

ConvexPolygon sector_polygon(Point2 apex, Angle axis, double half_angle, double radius,
                             double arc_step) {
    if (!(half_angle > 0.0 && half_angle < 90.0))
        throw InvalidParameter("sector_polygon: half angle must lie in (0, 90)");
    if (!(radius > 0.0)) throw InvalidParameter("sector_polygon: radius must be positive");
    if (!(arc_step > 0.0 && arc_step <= half_angle))
        throw InvalidParameter("sector_polygon: arc step must lie in (0, half angle]");
    if (!is_finite(apex) || !std::isfinite(axis.degrees))
        throw InvalidParameter("sector_polygon: non-finite apex or axis");

    const double lo = axis.degrees - half_angle;
    const double hi = axis.degrees + half_angle;
    const auto steps = static_cast<long>(std::floor(2.0 * half_angle / arc_step + 1e-9));

    std::vector<Point2> vertices;
    vertices.reserve(static_cast<std::size_t>(steps) + 3);
    vertices.push_back(apex);
    auto ray = [&](double deg) { return apex + radius * Angle{deg}.unit(); };
    for (long i = 0; i <= steps; ++i) {
        const double deg = lo + static_cast<double>(i) * arc_step;
        if (deg > hi - 1e-9 * arc_step) break;
        vertices.push_back(ray(deg));
    }
    vertices.push_back(ray(hi));
    return ConvexPolygon(std::move(vertices));
}

double hausdorff(std::span<const Point2> a, std::span<const Point2> b) {
    if (a.empty() || b.empty()) throw InvalidParameter("hausdorff: point sets must be non-empty");
    auto directed = [](std::span<const Point2> from, std::span<const Point2> to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to) {
                const Vec2 d = q - p;
                best = std::min(best, dot(d, d));
                // Cannot raise the running maximum any more.
                if (best <= worst) break;
            }
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::sqrt(std::max(directed(a, b), directed(b, a)));
}

std::vector<Point2> sample_segment(const Segment& segment, double spacing) {
    if (!(spacing > 0.0)) throw InvalidParameter("sample_segment: spacing must be positive");
    const double len = segment.length();
    const auto steps = static_cast<std::size_t>(std::ceil(len / spacing));
    std::vector<Point2> out;
    out.reserve(steps + 1);
    out.push_back(segment.a);
    const Vec2 d = segment.b - segment.a;
    for (std::size_t i = 1; i < steps; ++i) {
        const double t = static_cast<double>(i) * spacing / len;
        out.push_back(segment.a + t * d);
    }
    if (steps > 0) out.push_back(segment.b);
    return out;
}

std::optional<Segment> clip_line_to_box(Point2 anchor, Angle direction, double min_x,
                                        double min_y, double max_x, double max_y) {
    // Liang-Barsky on an unbounded parameter range.
    Vec2 d = direction.unit();
    // Snap axis-aligned directions so that vertical and horizontal lines stay exact.
    if (std::abs(d.x) < 1e-15) d = {0.0, d.y > 0 ? 1.0 : -1.0};
    if (std::abs(d.y) < 1e-15) d = {d.x > 0 ? 1.0 : -1.0, 0.0};
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    auto edge = [&](double p, double q) {
        if (p == 0.0) return q >= 0.0;
        const double r = q / p;
        if (p < 0.0)
            t0 = std::max(t0, r);
        else
            t1 = std::min(t1, r);
        return true;
    };
    if (!edge(-d.x, anchor.x - min_x) || !edge(d.x, max_x - anchor.x) ||
        !edge(-d.y, anchor.y - min_y) || !edge(d.y, max_y - anchor.y))
        return std::nullopt;
    if (t0 > t1) return std::nullopt;
    return Segment{anchor + t0 * d, anchor + t1 * d};
}

double distance_to_segment(Point2 p, const Segment& s) {
    const Vec2 d = s.b - s.a;
    const double len_sq = dot(d, d);
    if (len_sq == 0.0) return distance(p, s.a);
    const double t = std::clamp(dot(p - s.a, d) / len_sq, 0.0, 1.0);
    return distance(p, s.a + t * d);
}

}  // namespace icc
