#pragma once

#include "icc/fgbg.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>

namespace icc {

struct OutputSelection {
    bool colored = true;
    bool binary = true;
    bool json = true;
    bool debug = false;
    friend bool operator==(const OutputSelection&, const OutputSelection&) = default;
};

/// Every tunable of the pipeline. Serialized keys use the same kebab-case
/// names as the command-line flags.
struct PipelineConfig {
    // gaze branch
    double cone_opening = 50.0;
    double gaze_correction = 0.0;
    double arc_step = 5.0;
    double min_region_fraction = 1e-4;  ///< of the image area
    double min_confidence = 0.0;

    // foreground/background branch
    int median_kernel = 5;
    int bilateral_diameter = 9;
    double bilateral_sigma_color = 75.0;
    double bilateral_sigma_space = 75.0;
    HullScale hull_up{1.7, 1.4};
    HullScale hull_down{1.0, 0.7};
    int inpaint_radius = 3;
    int frame_margin = 0;
    int k = 7;
    int kmeans_max_iters = 50;
    double kmeans_tol = 0.5;
    std::uint64_t seed = 42;
    double fg_threshold = 0.06;
    int close_radius = 1;
    int open_radius = 2;
    int post_median = 5;

    // rendering
    int line_width = 3;
    OutputSelection outputs;

    /// Execution only; never serialized because it cannot change the output.
    int threads = 1;

    /// Throws InvalidParameter naming the first offending key.
    void validate() const;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

void to_json(nlohmann::json& j, const PipelineConfig& cfg);
/// Missing keys keep their defaults; unknown keys raise SchemaError.
void from_json(const nlohmann::json& j, PipelineConfig& cfg);

}  // namespace icc
