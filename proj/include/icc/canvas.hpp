#pragma once

#include "icc/config.hpp"
#include "icc/gaze.hpp"
#include "icc/imaging.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace icc {

struct PersonLine {
    int person_id = 0;
    Segment line;
};

struct FgSummary {
    std::vector<int> elected;
    int dominant = -1;
    std::vector<double> shares;
    bool fallback = false;
    Palette palette;
};

/// Everything the composition canvas shows, plus the configuration that
/// produced it.
struct CompositionResult {
    std::string image_id;
    int width = 0;
    int height = 0;
    std::vector<PersonLine> pose_lines;
    std::vector<GazeRay> gaze_rays;
    std::vector<ActionRegion> action_regions;
    std::vector<ActionLine> action_lines;
    std::optional<Angle> global_slope;
    std::optional<FgSummary> fg_colors;
    PipelineConfig parameters;
    std::vector<std::string> notes;
};

struct RenderStyle {
    Rgb action_line{255, 255, 0};
    Rgb pose_line{0, 200, 0};
    Rgb region_fill{255, 0, 0};
    double region_alpha = 0.35;
    Rgb centroid{255, 255, 255};
    double centroid_radius = 4.0;
    int line_width = 3;
};

/// Action line extent inside the image rectangle [0, w-1] x [0, h-1].
std::optional<Segment> action_line_extent(const ActionLine& line, int width, int height);

/// Draws regions, then action lines, then pose lines over `base`. Pixels not
/// covered by any primitive are copied unchanged.
RasterImage render_icc(const RasterImage& base, const CompositionResult& result,
                       const RenderStyle& style = {});
/// Binary canvases are rendered as black/white before the overlay.
RasterImage render_icc(const BinaryMask& base, const CompositionResult& result,
                       const RenderStyle& style = {});

/// Canonical JSON: sorted keys, numbers rounded to 9 significant digits.
std::string serialize_result(const CompositionResult& result);
/// Throws ParseError / SchemaError.
CompositionResult parse_result(std::string_view document);

}  // namespace icc
