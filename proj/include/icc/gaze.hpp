#pragma once

#include "icc/geometry.hpp"
#include "icc/pose.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace icc {

struct GazeRay {
    Point2 origin;      ///< neck keypoint
    Angle direction;    ///< direction angle in (-180, 180]
    int person_id = 0;
};

struct GazeCone {
    GazeRay ray;
    ConvexPolygon polygon;
    double opening = 0.0;  ///< full opening angle in degrees
};

struct ActionRegion {
    std::vector<ConvexPolygon> polygons;
    Point2 centroid;
    /// Sum of member polygon areas; overlapping members are counted once each,
    /// matching the weights used for the centroid.
    double area = 0.0;
    std::vector<std::pair<int, int>> contributing_pairs;
};

struct ActionLine {
    Point2 anchor;
    Angle slope;  ///< in (-90, 90]
};

/// Gaze-bisection ray: from the neck towards the midpoint of nose and mid-hip,
/// then tilted by `correction` degrees. A positive correction turns the ray
/// towards the horizontal on either side of the figure, so mirrored figures
/// receive mirrored corrections; vertical or horizontal raw rays are left
/// untouched. Returns std::nullopt when nose, neck or mid-hip is missing and
/// throws DegenerateGeometry when the midpoint coincides with the neck.
std::optional<GazeRay> gaze_vector(const PersonPose& pose, double correction, int person_id = 0,
                                   double min_confidence = 0.0);

GazeCone build_cone(const GazeRay& ray, double opening, double radius, double arc_step = 5.0);

/// Pairwise intersections of cones from different people, grouped into
/// connected components of mutually overlapping pieces. Pieces smaller than
/// `min_piece_area` are discarded. Output sorted by centroid x, then y.
std::vector<ActionRegion> intersect_cones(std::span<const GazeCone> cones,
                                          double min_piece_area = 0.0);

/// Arithmetic mean of the half-plane slopes of all rays.
Angle aggregate_slope(std::span<const GazeRay> rays);

/// True when the folded slopes spread over more than 90 degrees, where the
/// arithmetic mean is unreliable because of the +-90 wrap.
bool slopes_wrap(std::span<const GazeRay> rays);

std::vector<ActionLine> action_lines(std::span<const ActionRegion> regions, Angle slope);

}  // namespace icc
