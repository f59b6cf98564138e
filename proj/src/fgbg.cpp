#include "icc/fgbg.hpp"

#include "icc/error.hpp"

#include <algorithm>
#include <cmath>

namespace icc {

namespace {

Rgb to_rgb(const std::array<double, 3>& c) {
    auto ch = [](double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); };
    return {ch(c[0]), ch(c[1]), ch(c[2])};
}

}  // namespace

bool FgColorSet::contains(int label) const {
    return std::binary_search(elected.begin(), elected.end(), label);
}

void rasterize_polygon(const ConvexPolygon& polygon, BinaryMask& mask) {
    const auto b = polygon.bounds();
    const int x0 = std::max(0, static_cast<int>(std::ceil(b.min_x - 1e-9)));
    const int y0 = std::max(0, static_cast<int>(std::ceil(b.min_y - 1e-9)));
    const int x1 = std::min(mask.width() - 1, static_cast<int>(std::floor(b.max_x + 1e-9)));
    const int y1 = std::min(mask.height() - 1, static_cast<int>(std::floor(b.max_y + 1e-9)));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            if (polygon.contains({double(x), double(y)}, 1e-9)) mask.at(x, y) = 1;
}

MaskPair body_masks(std::span<const PersonPose> people, int width, int height, HullScale grow,
                    HullScale shrink, double min_confidence) {
    MaskPair masks{BinaryMask(width, height), BinaryMask(width, height)};
    int eligible = 0;
    for (const auto& person : people) {
        const auto pts = person.detected_points(min_confidence);
        if (pts.size() < 3) continue;
        try {
            const ConvexPolygon hull = convex_hull(pts);
            const Point2 c = area_centroid(hull).centroid;
            rasterize_polygon(scale_polygon(hull, grow.x, grow.y, c), masks.inpaint_mask);
            rasterize_polygon(scale_polygon(hull, shrink.x, shrink.y, c), masks.core_mask);
            ++eligible;
        } catch (const DegenerateGeometry&) {
            continue;  // collinear joints span no area
        }
    }
    if (eligible == 0)
        throw NoForegroundEvidence("body_masks: no person with three non-collinear keypoints");
    return masks;
}

FgColorSet elect_fg_colors(const LabelMap& labels, const BinaryMask& core_mask, double threshold) {
    if (!core_mask.same_shape(labels.labels))
        throw InvalidParameter("elect_fg_colors: mask dimensions differ from label map");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw InvalidParameter("elect_fg_colors: threshold must lie in (0, 1)");
    if (labels.k < 1) throw InvalidParameter("elect_fg_colors: label map has no clusters");

    std::vector<std::size_t> counts(static_cast<std::size_t>(labels.k), 0);
    std::size_t total = 0;
    for (std::size_t i = 0; i < core_mask.size(); ++i) {
        if (!core_mask.data()[i]) continue;
        ++counts.at(static_cast<std::size_t>(labels.labels.data()[i]));
        ++total;
    }
    if (total == 0) throw NoForegroundEvidence("elect_fg_colors: core mask is empty");

    FgColorSet fg;
    fg.shares.resize(counts.size());
    std::size_t best = 0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        fg.shares[c] = static_cast<double>(counts[c]) / static_cast<double>(total);
        if (counts[c] > counts[best]) best = c;
        if (fg.shares[c] > threshold)
            fg.elected.push_back(static_cast<int>(c));
    }
    fg.dominant = static_cast<int>(best);
    if (fg.elected.empty()) {
        fg.elected.push_back(fg.dominant);
        fg.fallback = true;
    }
    return fg;
}

RasterImage colored_canvas(const LabelMap& labels, const Palette& palette, const FgColorSet& fg,
                           int post_median, int threads) {
    if (palette.size() < static_cast<std::size_t>(labels.k))
        throw InvalidParameter("colored_canvas: palette smaller than cluster count");
    std::vector<Rgb> lut(palette.size());
    for (std::size_t c = 0; c < palette.size(); ++c)
        lut[c] = fg.contains(static_cast<int>(c)) ? to_rgb(palette.at(static_cast<std::size_t>(fg.dominant)))
                                                  : to_rgb(palette[c]);
    RasterImage img(labels.labels.width(), labels.labels.height());
    for (std::size_t i = 0; i < img.size(); ++i)
        img.data()[i] = lut.at(static_cast<std::size_t>(labels.labels.data()[i]));
    return median_filter(img, post_median, threads);
}

BinaryMask raw_foreground(const LabelMap& labels, const FgColorSet& fg) {
    BinaryMask raw(labels.labels.width(), labels.labels.height());
    for (std::size_t i = 0; i < raw.size(); ++i)
        raw.data()[i] = fg.contains(labels.labels.data()[i]) ? 1 : 0;
    return raw;
}

BinaryMask binary_canvas(const LabelMap& labels, const FgColorSet& fg, int close_r, int open_r) {
    if (close_r < 0 || open_r < 0) throw InvalidParameter("binary_canvas: negative radius");
    BinaryMask mask = raw_foreground(labels, fg);
    if (close_r > 0) mask = morphology(mask, MorphOp::Close, close_r);
    if (open_r > 0) mask = morphology(mask, MorphOp::Open, open_r);
    return mask;
}

RasterImage election_debug_canvas(const LabelMap& labels, const Palette& palette,
                                  const FgColorSet& fg, const BinaryMask& core_mask) {
    RasterImage img(labels.labels.width(), labels.labels.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        const int label = labels.labels.data()[i];
        const Rgb c = to_rgb(palette.at(static_cast<std::size_t>(label)));
        if (!core_mask.data()[i])
            img.data()[i] = {static_cast<std::uint8_t>(c.r / 3), static_cast<std::uint8_t>(c.g / 3),
                             static_cast<std::uint8_t>(c.b / 3)};
        else
            img.data()[i] = fg.contains(label) ? c : Rgb{0, 0, 255};
    }
    return img;
}

}  // namespace icc
