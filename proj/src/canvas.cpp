#include "icc/canvas.hpp"

#include "icc/error.hpp"

#include <cmath>

namespace icc {

namespace {

Rgb blend(Rgb base, Rgb over, double alpha) {
    auto ch = [&](std::uint8_t b, std::uint8_t o) {
        return static_cast<std::uint8_t>(
            std::clamp(std::lround((1.0 - alpha) * b + alpha * o), 0L, 255L));
    };
    return {ch(base.r, over.r), ch(base.g, over.g), ch(base.b, over.b)};
}

// Paints every pixel whose centre lies within width/2 of the segment.
void draw_segment(RasterImage& img, const Segment& s, int width, Rgb color) {
    const double half = 0.5 * width;
    const int x0 = std::max(0, static_cast<int>(std::floor(std::min(s.a.x, s.b.x) - half)));
    const int x1 = std::min(img.width() - 1, static_cast<int>(std::ceil(std::max(s.a.x, s.b.x) + half)));
    const int y0 = std::max(0, static_cast<int>(std::floor(std::min(s.a.y, s.b.y) - half)));
    const int y1 = std::min(img.height() - 1, static_cast<int>(std::ceil(std::max(s.a.y, s.b.y) + half)));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            if (distance_to_segment({double(x), double(y)}, s) <= half + 1e-9) img.at(x, y) = color;
}

void draw_disc(RasterImage& img, Point2 c, double radius, Rgb color) {
    const int x0 = std::max(0, static_cast<int>(std::floor(c.x - radius)));
    const int x1 = std::min(img.width() - 1, static_cast<int>(std::ceil(c.x + radius)));
    const int y0 = std::max(0, static_cast<int>(std::floor(c.y - radius)));
    const int y1 = std::min(img.height() - 1, static_cast<int>(std::ceil(c.y + radius)));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            if (distance({double(x), double(y)}, c) <= radius) img.at(x, y) = color;
}

}  // namespace

std::optional<Segment> action_line_extent(const ActionLine& line, int width, int height) {
    return clip_line_to_box(line.anchor, line.slope, 0.0, 0.0, width - 1.0, height - 1.0);
}

RasterImage render_icc(const RasterImage& base, const CompositionResult& result,
                       const RenderStyle& style) {
    if (!base.same_shape(result.width, result.height))
        throw InvalidParameter("render_icc: base dimensions differ from the result");
    RasterImage out = base;

    // Regions: a pixel covered by several member polygons is blended once.
    for (const auto& region : result.action_regions) {
        BinaryMask cover(out.width(), out.height());
        for (const auto& poly : region.polygons) {
            const auto b = poly.bounds();
            const int x0 = std::max(0, static_cast<int>(std::ceil(b.min_x)));
            const int x1 = std::min(out.width() - 1, static_cast<int>(std::floor(b.max_x)));
            const int y0 = std::max(0, static_cast<int>(std::ceil(b.min_y)));
            const int y1 = std::min(out.height() - 1, static_cast<int>(std::floor(b.max_y)));
            for (int y = y0; y <= y1; ++y)
                for (int x = x0; x <= x1; ++x)
                    if (poly.contains({double(x), double(y)})) cover.at(x, y) = 1;
        }
        for (std::size_t i = 0; i < cover.size(); ++i)
            if (cover.data()[i]) out.data()[i] = blend(out.data()[i], style.region_fill, style.region_alpha);
        draw_disc(out, region.centroid, style.centroid_radius, style.centroid);
    }
    for (const auto& line : result.action_lines)
        if (auto seg = action_line_extent(line, out.width(), out.height()))
            draw_segment(out, *seg, style.line_width, style.action_line);
    for (const auto& pl : result.pose_lines) draw_segment(out, pl.line, style.line_width, style.pose_line);
    return out;
}

RasterImage render_icc(const BinaryMask& base, const CompositionResult& result,
                       const RenderStyle& style) {
    RasterImage rgb(base.width(), base.height());
    for (std::size_t i = 0; i < base.size(); ++i)
        rgb.data()[i] = base.data()[i] ? Rgb{255, 255, 255} : Rgb{0, 0, 0};
    return render_icc(rgb, result, style);
}

}  // namespace icc
