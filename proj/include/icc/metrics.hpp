#pragma once

/**
 * @file metrics.hpp
 * @brief Agreement metrics between human annotations and a composition result.
 *
 * Region metrics (SD, L2) work in unit-square coordinates; line metrics (HD,
 * AD) work in pixels of the annotated image.
 */

#include "icc/canvas.hpp"
#include "icc/geometry.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace icc {

struct Annotator {
    std::string annotator_id;
    bool expert = false;
    std::vector<Point2> action_regions;  ///< normalized
    std::vector<Segment> action_lines;   ///< normalized
    std::vector<Segment> pose_lines;     ///< normalized
};

struct AnnotationSet {
    std::string image_id;
    std::vector<Annotator> annotators;
};

/// Absent values mean the metric is undefined for the data (e.g. no experts).
struct MetricsReport {
    std::optional<double> sd_ar_expert;
    std::optional<double> sd_ar_nonexpert;
    std::optional<double> l2_e_icc;
    std::optional<double> l2_ne_icc;
    std::optional<double> l2_e_ne;
    std::optional<double> hd_all_icc;  ///< pixels
    std::optional<double> ad_all_icc;  ///< degrees, [0, 90]
};

std::vector<Point2> normalize_points(std::span<const Point2> pts, int width, int height);
std::vector<Point2> denormalize_points(std::span<const Point2> pts, int width, int height);

/// sqrt(var x + var y), population variances. Needs at least two points.
double sd_ar(std::span<const Point2> points);

/// Distance between the means of two non-empty groups.
double l2_between_centroids(std::span<const Point2> a, std::span<const Point2> b);

double hd_lines(const Segment& a, const Segment& b, double spacing = 1.0);

/// Axial angle between two lines: arccos |u . v| in degrees.
double angular_deviation(const Segment& a, const Segment& b);

/// Region metrics first assign every annotated AR point to its nearest ICC
/// region; SD is the spread within those clusters and the L2 values are
/// point-weighted means over them, which reduces to the plain group means
/// when the result has a single region. HD and AD match each annotated line
/// with the ICC action line of smallest HD and are averaged per annotator,
/// then over annotators.
MetricsReport evaluate(const AnnotationSet& annotations, const CompositionResult& result,
                       double spacing = 1.0);

/// Reads the annotation JSON. Throws ParseError / SchemaError.
AnnotationSet parse_annotations(std::string_view document);
std::string serialize_annotations(const AnnotationSet& annotations);

/// Annotation set in which every annotator reproduces `result` exactly.
AnnotationSet annotations_from_result(const CompositionResult& result, int experts, int nonexperts);

/// Plain-text table with one column per report field.
std::string format_report(const MetricsReport& report);

}  // namespace icc
