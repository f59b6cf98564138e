#include "icc/pipeline.hpp"

#include "icc/error.hpp"
#include "icc/fgbg.hpp"
#include "icc/gaze.hpp"
#include "icc/image_io.hpp"

#include <cmath>

namespace icc {

namespace {

template <typename Fn>
auto in_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
    auto tag = [stage](const std::exception& e) { return std::string(stage) + ": " + e.what(); };
    try {
        return fn();
    } catch (const DegenerateGeometry& e) {
        throw DegenerateGeometry(tag(e));
    } catch (const InvalidParameter& e) {
        throw InvalidParameter(tag(e));
    } catch (const InpaintUnderconstrained& e) {
        throw InpaintUnderconstrained(tag(e));
    } catch (const NoForegroundEvidence& e) {
        throw NoForegroundEvidence(tag(e));
    }
}

std::string person_tag(std::size_t i) { return "person " + std::to_string(i); }

BinaryMask frame_band(int width, int height, int margin) {
    BinaryMask band(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (x < margin || y < margin || x >= width - margin || y >= height - margin) band.at(x, y) = 1;
    return band;
}

void gaze_branch(std::span<const PersonPose> people, const PipelineConfig& cfg,
                 CompositionResult& r) {
    const double diagonal = std::hypot(r.width, r.height);
    for (std::size_t i = 0; i < people.size(); ++i) {
        const int id = static_cast<int>(i);
        const auto tri = triangle_corners(people[i], cfg.min_confidence);
        if (!tri) {
            r.notes.push_back(person_tag(i) + ": a pose-triangle group has no detected joint; no pose line");
        } else {
            try {
                r.pose_lines.push_back({id, pose_line(*tri).line});
            } catch (const DegenerateGeometry& e) {
                r.notes.push_back(person_tag(i) + ": " + e.what());
            }
        }
        try {
            if (auto ray = gaze_vector(people[i], cfg.gaze_correction, id, cfg.min_confidence))
                r.gaze_rays.push_back(*ray);
            else
                r.notes.push_back(person_tag(i) + ": nose, neck or mid-hip missing; gaze skipped");
        } catch (const DegenerateGeometry& e) {
            r.notes.push_back(person_tag(i) + ": " + e.what() + "; gaze skipped");
        }
    }

    std::vector<GazeCone> cones;
    for (const auto& ray : r.gaze_rays)
        cones.push_back(in_stage("gaze cones", [&] {
            return build_cone(ray, cfg.cone_opening, diagonal, cfg.arc_step);
        }));
    const double min_area = cfg.min_region_fraction * r.width * r.height;
    r.action_regions = in_stage("action regions", [&] { return intersect_cones(cones, min_area); });
    if (cones.size() >= 2 && r.action_regions.empty())
        r.notes.push_back("gaze cones do not intersect; no action region");

    if (!r.gaze_rays.empty()) {
        r.global_slope = aggregate_slope(r.gaze_rays);
        if (slopes_wrap(r.gaze_rays))
            r.notes.push_back("gaze slopes spread over more than 90 degrees; mean slope is unreliable");
        r.action_lines = action_lines(r.action_regions, *r.global_slope);
    }
}

}  // namespace

PipelineOutput run_pipeline(const RasterImage& image, std::span<const PersonPose> people,
                            const PipelineConfig& cfg, std::string image_id) {
    in_stage("config", [&] { cfg.validate(); });
    if (image.width() <= 0 || image.height() <= 0) throw InvalidParameter("run_pipeline: empty image");

    PipelineOutput out;
    CompositionResult& r = out.result;
    r.image_id = std::move(image_id);
    r.width = image.width();
    r.height = image.height();
    r.parameters = cfg;
    r.parameters.threads = 1;

    gaze_branch(people, cfg, r);

    const RasterImage filtered = in_stage("filtering", [&] {
        return bilateral_filter(median_filter(image, cfg.median_kernel, cfg.threads),
                                cfg.bilateral_diameter, cfg.bilateral_sigma_color,
                                cfg.bilateral_sigma_space, cfg.threads);
    });

    std::optional<MaskPair> masks;
    try {
        masks = body_masks(people, r.width, r.height, cfg.hull_up, cfg.hull_down, cfg.min_confidence);
    } catch (const NoForegroundEvidence& e) {
        r.notes.push_back(std::string("NoForegroundEvidence: ") + e.what());
    }

    std::optional<FgColorSet> fg;
    KMeansResult km;
    if (masks) {
        BinaryMask inpaint_mask = masks->inpaint_mask;
        if (cfg.frame_margin > 0)
            inpaint_mask = mask_union(inpaint_mask, frame_band(r.width, r.height, cfg.frame_margin));
        out.inpaint_mask = inpaint_mask;

        RasterImage inpainted = filtered;
        try {
            inpainted = inpaint_fmm(filtered, inpaint_mask, cfg.inpaint_radius);
        } catch (const InpaintUnderconstrained& e) {
            r.notes.push_back(std::string("InpaintUnderconstrained: ") + e.what() +
                              "; clustering the filtered image instead");
        }

        km = in_stage("k-means", [&] {
            return kmeans_colors(inpainted, cfg.k, cfg.seed, cfg.kmeans_max_iters, cfg.kmeans_tol);
        });
        if (km.effective_k < cfg.k)
            r.notes.push_back("k-means: image has only " + std::to_string(km.effective_k) +
                              " distinct colours; k reduced from " + std::to_string(cfg.k));
        try {
            fg = elect_fg_colors(km.labels, masks->core_mask, cfg.fg_threshold);
        } catch (const NoForegroundEvidence& e) {
            r.notes.push_back(std::string("NoForegroundEvidence: ") + e.what());
        }
    }

    if (fg) {
        if (fg->fallback)
            r.notes.push_back("foreground election: no colour above threshold; dominant colour elected");
        r.fg_colors = FgSummary{fg->elected, fg->dominant, fg->shares, fg->fallback, km.palette};
        out.colored_canvas = colored_canvas(km.labels, km.palette, *fg, cfg.post_median, cfg.threads);
        out.binary_canvas = in_stage("binary canvas", [&] {
            return binary_canvas(km.labels, *fg, cfg.close_radius, cfg.open_radius);
        });
        if (cfg.outputs.debug)
            out.election_debug = election_debug_canvas(km.labels, km.palette, *fg, masks->core_mask);
    } else {
        out.colored_canvas = filtered;
        out.binary_canvas = BinaryMask(r.width, r.height);
    }

    RenderStyle style;
    style.line_width = cfg.line_width;
    out.colored_icc = render_icc(out.colored_canvas, r, style);
    out.binary_icc = render_icc(out.binary_canvas, r, style);
    return out;
}

std::vector<std::filesystem::path> write_outputs(const PipelineOutput& out,
                                                 const std::filesystem::path& dir,
                                                 const std::string& stem,
                                                 const OutputSelection& selection) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IOError("cannot create output directory '" + dir.string() + "'");

    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& suffix, auto&& bytes) {
        const auto path = dir / (stem + suffix);
        write_file_atomic(path, bytes);
        written.push_back(path);
    };
    if (selection.colored) emit(".icc.png", encode_png(out.colored_icc));
    if (selection.binary) emit(".icc-binary.png", encode_png(out.binary_icc));
    if (selection.json) emit(".icc.json", serialize_result(out.result));
    if (selection.debug) {
        emit(".canvas.png", encode_png(out.colored_canvas));
        emit(".mask.png", encode_mask_png(out.binary_canvas));
        if (out.inpaint_mask) emit(".inpaint-mask.png", encode_mask_png(*out.inpaint_mask));
        if (out.election_debug) emit(".election.png", encode_png(*out.election_debug));
    }
    return written;
}

}  // namespace icc
