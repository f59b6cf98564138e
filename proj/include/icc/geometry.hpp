#pragma once

/**
 * @file geometry.hpp
 * @brief 2D kernel shared by every stage: angles, hulls, convex clipping,
 *        sectors, centroids and point-set distances.
 *
 * All coordinates are raster pixels with the y axis pointing down. Angles
 * are measured from +x towards +y, so a positive angle turns clockwise on
 * screen. Polygons are stored with positive orientation, i.e. the shoelace
 * sum x[i]*y[i+1] - x[i+1]*y[i] is positive.
 */

#include <optional>
#include <span>
#include <vector>

namespace icc {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend bool operator==(Point2 a, Point2 b) = default;
};

using Vec2 = Point2;

double dot(Vec2 a, Vec2 b);
double cross(Vec2 a, Vec2 b);
double norm(Vec2 v);
double distance(Point2 a, Point2 b);
Point2 midpoint(Point2 a, Point2 b);
bool is_finite(Point2 p);

/// Angle in degrees. Whether it denotes a direction in (-180, 180] or a
/// slope in (-90, 90] depends on the function that produced it.
struct Angle {
    double degrees = 0.0;

    double radians() const;
    Vec2 unit() const;
    friend bool operator==(Angle a, Angle b) = default;
};

Angle angle_of(Vec2 v);
Angle normalize_direction(Angle a);
/// Folds a direction onto the right half plane: the result is congruent to
/// `a` modulo 180 degrees and lies in (-90, 90].
Angle map_to_half_plane(Angle a);

struct Segment {
    Point2 a;
    Point2 b;

    double length() const { return distance(a, b); }
    friend bool operator==(const Segment&, const Segment&) = default;
};

struct AreaCentroid {
    double area = 0.0;
    Point2 centroid;
};

class ConvexPolygon {
public:
    /// Validates the vertex list: at least three vertices, finite, positive
    /// area and convex with positive orientation. Throws DegenerateGeometry.
    explicit ConvexPolygon(std::vector<Point2> vertices);

    const std::vector<Point2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }

    /// Inclusive containment test with absolute tolerance in pixels.
    bool contains(Point2 p, double tolerance = 1e-9) const;

    struct Bounds {
        double min_x, min_y, max_x, max_y;
    };
    Bounds bounds() const;

private:
    std::vector<Point2> vertices_;
};

double signed_area(std::span<const Point2> ring);

/// Andrew's monotone chain. Throws DegenerateGeometry when fewer than three
/// distinct points remain or every point lies on one line.
ConvexPolygon convex_hull(std::span<const Point2> points);

/// Anisotropic scaling about `center`. Throws InvalidParameter for
/// non-positive factors.
ConvexPolygon scale_polygon(const ConvexPolygon& polygon, double sx, double sy, Point2 center);

/// Exact intersection of two convex polygons. std::nullopt when the
/// interiors are disjoint or the overlap collapses to a sliver.
std::optional<ConvexPolygon> clip_convex(const ConvexPolygon& subject, const ConvexPolygon& clip);

AreaCentroid area_centroid(const ConvexPolygon& polygon);

/// Inscribed polygon of the circular sector of `radius` around `axis`,
/// spanning axis +- half_angle. Arc vertices are placed every `arc_step`
/// degrees starting at the lower extreme ray; the upper extreme ray is always
/// included.
ConvexPolygon sector_polygon(Point2 apex, Angle axis, double half_angle, double radius,
                             double arc_step);

double hausdorff(std::span<const Point2> a, std::span<const Point2> b);

std::vector<Point2> sample_segment(const Segment& segment, double spacing);

/// Clips the infinite line through `anchor` with direction `direction` to the
/// axis-aligned box [min_x, max_x] x [min_y, max_y]. std::nullopt if the line
/// misses the box.
std::optional<Segment> clip_line_to_box(Point2 anchor, Angle direction, double min_x,
                                        double min_y, double max_x, double max_y);

double distance_to_segment(Point2 p, const Segment& segment);

}  // namespace icc
