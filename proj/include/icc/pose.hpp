#pragma once

#include "icc/geometry.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace icc {

inline constexpr int kBodyKeypoints = 25;

// BODY-25 indices referenced by name elsewhere.
namespace body25 {
inline constexpr int kNose = 0;
inline constexpr int kNeck = 1;
inline constexpr int kMidHip = 8;
}  // namespace body25

struct Keypoint {
    Point2 position;
    double confidence = 0.0;
    int index = 0;

    /// Undetected joints are zeroed in the input files, so anything at or
    /// below the floor counts as missing.
    bool detected(double min_confidence = 0.0) const { return confidence > min_confidence; }
};

struct PersonPose {
    std::array<Keypoint, kBodyKeypoints> keypoints{};

    const Keypoint& operator[](int i) const { return keypoints.at(static_cast<std::size_t>(i)); }
    std::vector<Point2> detected_points(double min_confidence = 0.0) const;
    int detected_count(double min_confidence = 0.0) const;

    /// Builds a pose from 75 values laid out as x, y, confidence per joint.
    static PersonPose from_flat(const std::array<double, 3 * kBodyKeypoints>& flat);
};

/// Keypoint groups whose best-scoring member becomes a triangle corner.
inline constexpr std::array<int, 8> kTopGroup{0, 1, 2, 5, 15, 16, 17, 18};
inline constexpr std::array<int, 6> kLeftGroup{9, 10, 11, 22, 23, 24};
inline constexpr std::array<int, 6> kRightGroup{12, 13, 14, 19, 20, 21};

struct PoseTriangle {
    Point2 top;
    Point2 left;
    Point2 right;
    std::array<int, 3> source_indices{};
    std::array<double, 3> source_confidences{};
};

struct PoseLine {
    Segment line;
};

/// Reads the standard 25-joint pose JSON ({"people":[{"pose_keypoints_2d":[...]}]}).
/// Throws ParseError for malformed JSON and SchemaError for structural
/// violations. People without a single detected joint are dropped.
std::vector<PersonPose> parse_keypoints(std::string_view document);

/// Inverse of parse_keypoints; emits the minimal schema.
std::string serialize_keypoints(const std::vector<PersonPose>& people);

/// Picks the highest-confidence joint of each group (lowest index on ties).
/// std::nullopt when a group has no joint above `min_confidence`.
std::optional<PoseTriangle> triangle_corners(const PersonPose& pose, double min_confidence = 0.0);

/// Median from the top corner to the midpoint of the base.
PoseLine pose_line(const PoseTriangle& triangle);

}  // namespace icc
