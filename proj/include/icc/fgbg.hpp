#pragma once

#include "icc/imaging.hpp"
#include "icc/pose.hpp"

#include <span>
#include <vector>

namespace icc {

struct FgColorSet {
    std::vector<int> elected;   ///< ascending cluster indices
    int dominant = -1;
    std::vector<double> shares; ///< per-cluster share of the core mask
    bool fallback = false;      ///< nothing passed the threshold; argmax elected

    bool contains(int label) const;
};

struct MaskPair {
    BinaryMask inpaint_mask;
    BinaryMask core_mask;

    bool operator==(const MaskPair&) const = default;
};

struct HullScale {
    double x = 1.0;
    double y = 1.0;
    friend bool operator==(HullScale, HullScale) = default;
};

/// Marks pixels whose centre lies inside `polygon`.
void rasterize_polygon(const ConvexPolygon& polygon, BinaryMask& mask);

/// Union over people of their keypoint hulls, scaled about the hull centroid
/// (`grow` for the inpainting mask, `shrink` for the core mask) and clipped
/// to the image. People with fewer than three non-collinear detected joints
/// are skipped. Throws NoForegroundEvidence when nobody qualifies.
MaskPair body_masks(std::span<const PersonPose> people, int width, int height,
                    HullScale grow = {1.7, 1.4}, HullScale shrink = {1.0, 0.7},
                    double min_confidence = 0.0);

/// Clusters covering strictly more than `threshold` of the core mask.
/// Throws NoForegroundEvidence for an empty mask.
FgColorSet elect_fg_colors(const LabelMap& labels, const BinaryMask& core_mask, double threshold);

/// Palette rendering with every foreground cluster painted in the dominant
/// colour, followed by a median filter (`post_median` = 1 disables it).
RasterImage colored_canvas(const LabelMap& labels, const Palette& palette, const FgColorSet& fg,
                           int post_median, int threads = 1);

/// Foreground indicator before any morphology.
BinaryMask raw_foreground(const LabelMap& labels, const FgColorSet& fg);

/// raw_foreground followed by closing (radius `close_r`) and opening
/// (radius `open_r`); a radius of 0 skips that step.
BinaryMask binary_canvas(const LabelMap& labels, const FgColorSet& fg, int close_r, int open_r);

/// Diagnostic view of the election: core-mask pixels in elected colours keep
/// their palette colour, rejected ones are painted blue, everything else is
/// darkened.
RasterImage election_debug_canvas(const LabelMap& labels, const Palette& palette,
                                  const FgColorSet& fg, const BinaryMask& core_mask);

}  // namespace icc
