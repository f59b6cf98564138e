#include "icc/pose.hpp"

#include "icc/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <span>

namespace icc {

namespace {

using nlohmann::json;

template <std::size_t N>
std::optional<std::pair<int, double>> best_of(const PersonPose& pose,
                                              const std::array<int, N>& group,
                                              double min_confidence) {
    std::optional<std::pair<int, double>> best;
    // Groups are listed in ascending index order, so strict '>' keeps the
    // lowest index on ties.
    for (int idx : group) {
        const Keypoint& kp = pose[idx];
        if (!kp.detected(min_confidence)) continue;
        if (!best || kp.confidence > best->second) best = {idx, kp.confidence};
    }
    return best;
}

}  // namespace

std::vector<Point2> PersonPose::detected_points(double min_confidence) const {
    std::vector<Point2> out;
    for (const auto& kp : keypoints)
        if (kp.detected(min_confidence)) out.push_back(kp.position);
    return out;
}

int PersonPose::detected_count(double min_confidence) const {
    int n = 0;
    for (const auto& kp : keypoints) n += kp.detected(min_confidence) ? 1 : 0;
    return n;
}

PersonPose PersonPose::from_flat(const std::array<double, 3 * kBodyKeypoints>& flat) {
    PersonPose pose;
    for (int i = 0; i < kBodyKeypoints; ++i) {
        const auto base = static_cast<std::size_t>(3 * i);
        pose.keypoints[static_cast<std::size_t>(i)] =
            Keypoint{{flat[base], flat[base + 1]}, flat[base + 2], i};
    }
    return pose;
}

std::vector<PersonPose> parse_keypoints(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("keypoint file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("people") || !doc["people"].is_array())
        throw SchemaError("keypoint file: expected an object with a 'people' array");

    std::vector<PersonPose> people;
    std::size_t person_no = 0;
    for (const auto& person : doc["people"]) {
        const std::string where = "keypoint file: person " + std::to_string(person_no++);
        if (!person.is_object() || !person.contains("pose_keypoints_2d"))
            throw SchemaError(where + " has no 'pose_keypoints_2d'");
        const auto& values = person["pose_keypoints_2d"];
        if (!values.is_array() || values.size() != 3 * kBodyKeypoints)
            throw SchemaError(where + ": 'pose_keypoints_2d' must hold exactly 75 numbers");

        std::array<double, 3 * kBodyKeypoints> flat{};
        for (std::size_t i = 0; i < flat.size(); ++i) {
            if (!values[i].is_number()) throw SchemaError(where + ": non-numeric keypoint value");
            flat[i] = values[i].get<double>();
            if (!std::isfinite(flat[i])) throw SchemaError(where + ": non-finite keypoint value");
        }
        PersonPose pose = PersonPose::from_flat(flat);
        for (const auto& kp : pose.keypoints)
            if (kp.confidence < 0.0 || kp.confidence > 1.0)
                throw SchemaError(where + ": confidence outside [0, 1]");
        if (pose.detected_count() == 0) continue;
        people.push_back(pose);
    }
    return people;
}

std::string serialize_keypoints(const std::vector<PersonPose>& people) {
    json arr = json::array();
    for (const auto& pose : people) {
        json flat = json::array();
        for (const auto& kp : pose.keypoints) {
            flat.push_back(kp.position.x);
            flat.push_back(kp.position.y);
            flat.push_back(kp.confidence);
        }
        arr.push_back({{"pose_keypoints_2d", std::move(flat)}});
    }
    return json{{"people", std::move(arr)}}.dump();
}

std::optional<PoseTriangle> triangle_corners(const PersonPose& pose, double min_confidence) {
    const auto top = best_of(pose, kTopGroup, min_confidence);
    const auto left = best_of(pose, kLeftGroup, min_confidence);
    const auto right = best_of(pose, kRightGroup, min_confidence);
    if (!top || !left || !right) return std::nullopt;
    return PoseTriangle{pose[top->first].position,
                        pose[left->first].position,
                        pose[right->first].position,
                        {top->first, left->first, right->first},
                        {top->second, left->second, right->second}};
}

PoseLine pose_line(const PoseTriangle& triangle) {
    const Point2 base = midpoint(triangle.left, triangle.right);
    if (base == triangle.top)
        throw DegenerateGeometry("pose_line: top corner coincides with the base midpoint");
    return PoseLine{Segment{triangle.top, base}};
}

}  // namespace icc
