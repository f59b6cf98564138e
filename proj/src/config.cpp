#include "icc/config.hpp"

#include "icc/error.hpp"
#include "json_util.hpp"

#include <set>
#include <string>

namespace icc {

namespace {

void check(bool ok, const char* key, const char* rule) {
    if (!ok) throw InvalidParameter(std::string("config '") + key + "': " + rule);
}

bool odd_positive(int v) { return v >= 1 && v % 2 == 1; }

}  // namespace

void PipelineConfig::validate() const {
    check(cone_opening > 0.0 && cone_opening < 180.0, "cone-opening", "must lie in (0, 180)");
    check(std::isfinite(gaze_correction), "gaze-correction", "must be finite");
    check(arc_step > 0.0 && arc_step <= cone_opening / 2.0, "arc-step",
          "must lie in (0, cone-opening / 2]");
    check(min_region_fraction >= 0.0 && min_region_fraction < 1.0, "min-region-fraction",
          "must lie in [0, 1)");
    check(min_confidence >= 0.0 && min_confidence < 1.0, "min-confidence", "must lie in [0, 1)");
    check(odd_positive(median_kernel), "median-kernel", "must be odd and >= 1");
    check(odd_positive(bilateral_diameter), "bilateral-diameter", "must be odd and >= 1");
    check(bilateral_sigma_color > 0.0, "bilateral-sigma-color", "must be positive");
    check(bilateral_sigma_space > 0.0, "bilateral-sigma-space", "must be positive");
    check(hull_up.x > 0.0 && hull_up.y > 0.0, "hull-up", "factors must be positive");
    check(hull_down.x > 0.0 && hull_down.y > 0.0, "hull-down", "factors must be positive");
    check(inpaint_radius >= 1, "inpaint-radius", "must be >= 1");
    check(frame_margin >= 0, "frame-margin", "must be >= 0");
    check(k >= 2, "k", "must be >= 2");
    check(kmeans_max_iters >= 1, "kmeans-max-iters", "must be >= 1");
    check(kmeans_tol >= 0.0, "kmeans-tol", "must be >= 0");
    check(fg_threshold > 0.0 && fg_threshold < 1.0, "fg-threshold", "must lie in (0, 1)");
    check(close_radius >= 0, "close-radius", "must be >= 0");
    check(open_radius >= 0, "open-radius", "must be >= 0");
    check(odd_positive(post_median), "post-median", "must be odd and >= 1");
    check(line_width >= 1, "line-width", "must be >= 1");
    check(threads >= 1, "threads", "must be >= 1");
}

void to_json(nlohmann::json& j, const PipelineConfig& c) {
    using detail::canonical;
    j = nlohmann::json{
        {"cone-opening", canonical(c.cone_opening)},
        {"gaze-correction", canonical(c.gaze_correction)},
        {"arc-step", canonical(c.arc_step)},
        {"min-region-fraction", canonical(c.min_region_fraction)},
        {"min-confidence", canonical(c.min_confidence)},
        {"median-kernel", c.median_kernel},
        {"bilateral-diameter", c.bilateral_diameter},
        {"bilateral-sigma-color", canonical(c.bilateral_sigma_color)},
        {"bilateral-sigma-space", canonical(c.bilateral_sigma_space)},
        {"hull-up", {canonical(c.hull_up.x), canonical(c.hull_up.y)}},
        {"hull-down", {canonical(c.hull_down.x), canonical(c.hull_down.y)}},
        {"inpaint-radius", c.inpaint_radius},
        {"frame-margin", c.frame_margin},
        {"k", c.k},
        {"kmeans-max-iters", c.kmeans_max_iters},
        {"kmeans-tol", canonical(c.kmeans_tol)},
        {"seed", c.seed},
        {"fg-threshold", canonical(c.fg_threshold)},
        {"close-radius", c.close_radius},
        {"open-radius", c.open_radius},
        {"post-median", c.post_median},
        {"line-width", c.line_width},
        {"outputs",
         {{"colored", c.outputs.colored},
          {"binary", c.outputs.binary},
          {"json", c.outputs.json},
          {"debug", c.outputs.debug}}},
    };
}

void from_json(const nlohmann::json& j, PipelineConfig& c) {
    if (!j.is_object()) throw SchemaError("config: expected an object");
    static const std::set<std::string> known{
        "cone-opening", "gaze-correction", "arc-step", "min-region-fraction", "min-confidence",
        "median-kernel", "bilateral-diameter", "bilateral-sigma-color", "bilateral-sigma-space",
        "hull-up", "hull-down", "inpaint-radius", "frame-margin", "k", "kmeans-max-iters",
        "kmeans-tol", "seed", "fg-threshold", "close-radius", "open-radius", "post-median",
        "line-width", "outputs"};
    for (const auto& [key, value] : j.items())
        if (!known.contains(key)) throw SchemaError("config: unknown key '" + key + "'");

    auto read = [&](const char* key, auto& field) {
        if (j.contains(key)) field = detail::require<std::decay_t<decltype(field)>>(j, key, "config");
    };
    auto read_scale = [&](const char* key, HullScale& s) {
        if (!j.contains(key)) return;
        const auto v = detail::require<std::vector<double>>(j, key, "config");
        if (v.size() != 2) throw SchemaError(std::string("config: '") + key + "' needs two factors");
        s = {v[0], v[1]};
    };
    read("cone-opening", c.cone_opening);
    read("gaze-correction", c.gaze_correction);
    read("arc-step", c.arc_step);
    read("min-region-fraction", c.min_region_fraction);
    read("min-confidence", c.min_confidence);
    read("median-kernel", c.median_kernel);
    read("bilateral-diameter", c.bilateral_diameter);
    read("bilateral-sigma-color", c.bilateral_sigma_color);
    read("bilateral-sigma-space", c.bilateral_sigma_space);
    read_scale("hull-up", c.hull_up);
    read_scale("hull-down", c.hull_down);
    read("inpaint-radius", c.inpaint_radius);
    read("frame-margin", c.frame_margin);
    read("k", c.k);
    read("kmeans-max-iters", c.kmeans_max_iters);
    read("kmeans-tol", c.kmeans_tol);
    read("seed", c.seed);
    read("fg-threshold", c.fg_threshold);
    read("close-radius", c.close_radius);
    read("open-radius", c.open_radius);
    read("post-median", c.post_median);
    read("line-width", c.line_width);
    if (j.contains("outputs")) {
        const auto& o = j.at("outputs");
        auto flag = [&](const char* key, bool& field) {
            if (o.contains(key)) field = detail::require<bool>(o, key, "config.outputs");
        };
        flag("colored", c.outputs.colored);
        flag("binary", c.outputs.binary);
        flag("json", c.outputs.json);
        flag("debug", c.outputs.debug);
    }
}

}  // namespace icc
