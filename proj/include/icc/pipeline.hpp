#pragma once

#include "icc/canvas.hpp"
#include "icc/config.hpp"
#include "icc/imaging.hpp"
#include "icc/pose.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace icc {

struct PipelineOutput {
    CompositionResult result;
    RasterImage colored_icc;     ///< overlays on the colored canvas
    RasterImage binary_icc;      ///< overlays on the binary canvas
    RasterImage colored_canvas;  ///< without overlays
    BinaryMask binary_canvas;    ///< without overlays
    std::optional<BinaryMask> inpaint_mask;
    std::optional<RasterImage> election_debug;
};

/// Both branches of the composition analysis on one image. Recoverable
/// conditions (missing joints, no cone overlap, no foreground evidence) are
/// recorded in result.notes; errors from a stage are rethrown with the stage
/// name prefixed and their type preserved.
PipelineOutput run_pipeline(const RasterImage& image, std::span<const PersonPose> people,
                            const PipelineConfig& cfg, std::string image_id = "image");

/// Writes the selected outputs as <stem>.icc.png, <stem>.icc-binary.png and
/// <stem>.icc.json (plus debug rasters) into `dir`. Returns the written paths.
std::vector<std::filesystem::path> write_outputs(const PipelineOutput& out,
                                                 const std::filesystem::path& dir,
                                                 const std::string& stem,
                                                 const OutputSelection& selection);

}  // namespace icc
