#include "cli.hpp"

#include "icc/error.hpp"
#include "icc/image_io.hpp"
#include "icc/metrics.hpp"
#include "icc/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <filesystem>
#include <optional>
#include <thread>

namespace icc::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

// Suffixes of files this tool writes; batch mode never treats them as inputs.
constexpr std::array<const char*, 6> kOwnOutputs{".icc", ".icc-binary", ".canvas",
                                                 ".mask", ".inpaint-mask", ".election"};

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const IOError*>(&e)) return kIo;
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const SchemaError*>(&e)) return kData;
    if (dynamic_cast<const InvalidParameter*>(&e)) return kUsage;
    if (dynamic_cast<const Error*>(&e)) return kDegenerate;
    return kIo;
}

fs::path sidecar_for(const fs::path& image) {
    return image.parent_path() / (image.stem().string() + ".keypoints.json");
}

bool is_image(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext != ".png" && ext != ".jpg" && ext != ".jpeg") return false;
    const std::string stem = p.stem().string();
    return std::none_of(kOwnOutputs.begin(), kOwnOutputs.end(), [&](const char* suffix) {
        const std::string s(suffix);
        return stem.size() > s.size() && stem.compare(stem.size() - s.size(), s.size(), s) == 0;
    });
}

struct RunReport {
    int code = kOk;
    std::string message;
    std::vector<std::string> notes;
    std::vector<fs::path> written;
};

RunReport process_image(const fs::path& image_path, const std::optional<fs::path>& keypoints,
                        const fs::path& out_dir, const PipelineConfig& cfg) {
    RunReport report;
    try {
        const fs::path kp_path = keypoints.value_or(sidecar_for(image_path));
        if (!fs::exists(kp_path)) throw IOError("keypoint file not found: expected '" + kp_path.string() + "'");
        const RasterImage image = read_image(image_path);
        const auto people = parse_keypoints(read_text_file(kp_path));
        const std::string stem = image_path.stem().string();
        const PipelineOutput out = run_pipeline(image, people, cfg, stem);
        report.notes = out.result.notes;
        report.written = write_outputs(out, out_dir, stem, cfg.outputs);
    } catch (const std::exception& e) {
        report.code = exit_code_for(e);
        report.message = e.what();
    }
    return report;
}

void add_pipeline_options(CLI::App& app, PipelineConfig& cfg, std::vector<double>& hull_up,
                          std::vector<double>& hull_down, bool& no_colored, bool& no_binary,
                          bool& no_json) {
    app.option_defaults()->always_capture_default();
    auto* g = "Pipeline";
    app.add_option("--cone-opening", cfg.cone_opening, "Gaze cone opening angle (degrees)")->group(g);
    app.add_option("--gaze-correction", cfg.gaze_correction,
                   "Tilt of each gaze ray towards the horizontal (degrees)")->group(g);
    app.add_option("--arc-step", cfg.arc_step, "Angular spacing of cone arc vertices (degrees)")->group(g);
    app.add_option("--min-region-fraction", cfg.min_region_fraction,
                   "Smallest action-region piece, as a fraction of the image area")->group(g);
    app.add_option("--min-confidence", cfg.min_confidence, "Keypoints at or below this are missing")->group(g);
    app.add_option("--median-kernel", cfg.median_kernel, "Median filter kernel (odd)")->group(g);
    app.add_option("--bilateral-diameter", cfg.bilateral_diameter, "Bilateral window (odd)")->group(g);
    app.add_option("--bilateral-sigma-color", cfg.bilateral_sigma_color)->group(g);
    app.add_option("--bilateral-sigma-space", cfg.bilateral_sigma_space)->group(g);
    app.add_option("--hull-up", hull_up, "Inpainting hull scale X Y")->expected(2)->group(g);
    app.add_option("--hull-down", hull_down, "Core hull scale X Y")->expected(2)->group(g);
    app.add_option("--inpaint-radius", cfg.inpaint_radius)->group(g);
    app.add_option("--frame-margin", cfg.frame_margin, "Border band added to the inpainting mask (px)")->group(g);
    app.add_option("--k", cfg.k, "k-means clusters")->group(g);
    app.add_option("--kmeans-max-iters", cfg.kmeans_max_iters)->group(g);
    app.add_option("--kmeans-tol", cfg.kmeans_tol)->group(g);
    app.add_option("--seed", cfg.seed)->group(g);
    app.add_option("--fg-threshold", cfg.fg_threshold, "Core-mask share needed to count as foreground")->group(g);
    app.add_option("--close-radius", cfg.close_radius)->group(g);
    app.add_option("--open-radius", cfg.open_radius)->group(g);
    app.add_option("--post-median", cfg.post_median)->group(g);
    app.add_option("--line-width", cfg.line_width)->group(g);
    app.add_option("--threads", cfg.threads, "Worker threads per image")->group(g);
    app.add_flag("--no-colored", no_colored, "Skip <stem>.icc.png")->group(g);
    app.add_flag("--no-binary", no_binary, "Skip <stem>.icc-binary.png")->group(g);
    app.add_flag("--no-json", no_json, "Skip <stem>.icc.json")->group(g);
    app.add_flag("--debug", cfg.outputs.debug, "Also write intermediate rasters")->group(g);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Composition canvas from an image and its body keypoints", "icc"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.set_config("--config", "icc.toml", "TOML file with pipeline options (flags win)");

    PipelineConfig cfg;
    std::vector<double> hull_up{cfg.hull_up.x, cfg.hull_up.y};
    std::vector<double> hull_down{cfg.hull_down.x, cfg.hull_down.y};
    bool no_colored = false, no_binary = false, no_json = false;
    add_pipeline_options(app, cfg, hull_up, hull_down, no_colored, no_binary, no_json);

    std::string image_arg, keypoints_arg, out_arg = ".";
    auto* run = app.add_subcommand("run", "Analyse one image");
    run->fallthrough();
    run->add_option("image", image_arg, "Input image (PNG or JPEG)")->required();
    run->add_option("--keypoints", keypoints_arg, "Keypoint JSON (default: <stem>.keypoints.json)");
    run->add_option("--out", out_arg, "Output directory");

    std::string batch_dir, batch_out;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    auto* batch = app.add_subcommand("batch", "Analyse every image with a keypoint sidecar in a directory");
    batch->fallthrough();
    batch->add_option("dir", batch_dir, "Input directory")->required();
    batch->add_option("--out", batch_out, "Output directory (default: the input directory)");
    batch->add_option("--jobs", jobs, "Images processed in parallel")->check(CLI::PositiveNumber);

    std::string annotations_arg, result_arg;
    double spacing = 1.0;
    auto* eval = app.add_subcommand("eval", "Compare a result against human annotations");
    eval->add_option("--annotations", annotations_arg, "Annotation JSON")->required();
    eval->add_option("--result", result_arg, "Result JSON written by 'run'")->required();
    eval->add_option("--spacing", spacing, "Line sampling step for the Hausdorff distance (px)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    cfg.hull_up = {hull_up.at(0), hull_up.at(1)};
    cfg.hull_down = {hull_down.at(0), hull_down.at(1)};
    cfg.outputs.colored = !no_colored;
    cfg.outputs.binary = !no_binary;
    cfg.outputs.json = !no_json;
    try {
        cfg.validate();
    } catch (const InvalidParameter& e) {
        err << "icc: " << e.what() << "\n";
        return kUsage;
    }

    if (*run) {
        std::optional<fs::path> kp;
        if (!keypoints_arg.empty()) kp = keypoints_arg;
        const RunReport report = process_image(image_arg, kp, out_arg, cfg);
        for (const auto& note : report.notes) err << "note: " << note << "\n";
        if (report.code != kOk) {
            err << "icc: " << report.message << "\n";
            return report.code;
        }
        for (const auto& p : report.written) out << p.string() << "\n";
        return kOk;
    }

    if (*batch) {
        std::vector<fs::path> images;
        std::error_code ec;
        for (const auto& entry : fs::directory_iterator(batch_dir, ec))
            if (entry.is_regular_file() && is_image(entry.path())) images.push_back(entry.path());
        if (ec) {
            err << "icc: cannot list '" << batch_dir << "': " << ec.message() << "\n";
            return kIo;
        }
        std::sort(images.begin(), images.end());
        const fs::path out_dir = batch_out.empty() ? fs::path(batch_dir) : fs::path(batch_out);

        PipelineConfig per_image = cfg;
        per_image.threads = 1;
        std::vector<RunReport> reports(images.size());
        std::atomic<std::size_t> next{0};
        {
            std::vector<std::jthread> workers;
            const int n = std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(1, images.size())));
            for (int t = 0; t < n; ++t)
                workers.emplace_back([&] {
                    for (std::size_t i = next++; i < images.size(); i = next++)
                        reports[i] = process_image(images[i], std::nullopt, out_dir, per_image);
                });
        }
        int code = kOk;
        for (std::size_t i = 0; i < images.size(); ++i) {
            const auto& r = reports[i];
            if (r.code == kOk) {
                out << "ok    " << images[i].filename().string() << "\n";
            } else {
                out << "fail  " << images[i].filename().string() << ": " << r.message << "\n";
                code = std::max(code, r.code);
            }
        }
        out << images.size() << " image(s), "
            << std::count_if(reports.begin(), reports.end(), [](const RunReport& r) { return r.code != kOk; })
            << " failed\n";
        return code;
    }

    if (*eval) {
        try {
            const AnnotationSet annotations = parse_annotations(read_text_file(annotations_arg));
            const CompositionResult result = parse_result(read_text_file(result_arg));
            out << format_report(evaluate(annotations, result, spacing));
            return kOk;
        } catch (const std::exception& e) {
            err << "icc: " << e.what() << "\n";
            return exit_code_for(e);
        }
    }
    return kUsage;
}

}  // namespace icc::cli
