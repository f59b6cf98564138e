#pragma once

// Reference implementations used to check the library. They favour the
// plainest possible formulation over speed and share no code with src/.

#include "icc/geometry.hpp"
#include "icc/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using icc::Point2;

/// Even-odd crossing test; boundary points may go either way.
inline bool inside(const std::vector<Point2>& poly, Point2 p) {
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Point2 a = poly[i], b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) in = !in;
        }
    }
    return in;
}

struct Box {
    double x0, y0, x1, y1;
};

inline Box bbox(const std::vector<Point2>& pts) {
    Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const auto& p : pts) {
        b.x0 = std::min(b.x0, p.x);
        b.y0 = std::min(b.y0, p.y);
        b.x1 = std::max(b.x1, p.x);
        b.y1 = std::max(b.y1, p.y);
    }
    return b;
}

/// Area of the region where every predicate holds, by counting cell centres
/// of an n x n grid laid over `box`.
inline double raster_area(const Box& box, int n, const std::function<bool(Point2)>& in_region) {
    const double dx = (box.x1 - box.x0) / n, dy = (box.y1 - box.y0) / n;
    long count = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (in_region({box.x0 + (i + 0.5) * dx, box.y0 + (j + 0.5) * dy})) ++count;
    return static_cast<double>(count) * dx * dy;
}

inline double intersection_area(const std::vector<Point2>& a, const std::vector<Point2>& b, int n = 1000) {
    return raster_area(bbox(a), n, [&](Point2 p) { return inside(a, p) && inside(b, p); });
}

/// Cells of row-centre height y whose centre lies inside `poly` (even-odd):
/// returned as sorted [x_in, x_out) crossing pairs.
inline std::vector<std::pair<double, double>> row_spans(const std::vector<Point2>& poly, double y) {
    std::vector<double> xs;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Point2 a = poly[i], b = poly[j];
        if ((a.y > y) != (b.y > y)) xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    std::vector<std::pair<double, double>> spans;
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) spans.push_back({xs[i], xs[i + 1]});
    return spans;
}

/// Same count as intersection_area, one row at a time: a cell centre x is
/// inside a polygon when it falls strictly left of an odd number of
/// crossings, i.e. within [x_in, x_out).
inline double intersection_area_scanline(const std::vector<Point2>& a, const std::vector<Point2>& b, int n = 1000) {
    const Box ba = bbox(a), bb = bbox(b);
    const Box box{std::max(ba.x0, bb.x0), std::max(ba.y0, bb.y0), std::min(ba.x1, bb.x1), std::min(ba.y1, bb.y1)};
    if (box.x1 <= box.x0 || box.y1 <= box.y0) return 0.0;
    const double dx = (box.x1 - box.x0) / n, dy = (box.y1 - box.y0) / n;
    // index of the first cell whose centre is >= x
    auto first_cell = [&](double x) {
        return std::clamp(static_cast<long>(std::ceil((x - box.x0) / dx - 0.5)), 0L, static_cast<long>(n));
    };
    long count = 0;
    for (int j = 0; j < n; ++j) {
        const double y = box.y0 + (j + 0.5) * dy;
        for (const auto& [a0, a1] : row_spans(a, y))
            for (const auto& [b0, b1] : row_spans(b, y)) {
                const double lo = std::max(a0, b0), hi = std::min(a1, b1);
                if (hi > lo) count += std::max(0L, first_cell(hi) - first_cell(lo));
            }
    }
    return static_cast<double>(count) * dx * dy;
}

/// Monte-Carlo centroid with rejection sampling in the bounding box.
inline Point2 mc_centroid(const std::vector<Point2>& poly, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Box b = bbox(poly);
    std::uniform_real_distribution<double> ux(b.x0, b.x1), uy(b.y0, b.y1);
    double sx = 0, sy = 0;
    long hits = 0;
    for (int i = 0; i < samples; ++i) {
        const Point2 p{ux(rng), uy(rng)};
        if (inside(poly, p)) {
            sx += p.x;
            sy += p.y;
            ++hits;
        }
    }
    return {sx / hits, sy / hits};
}

/// Channel-wise median of the clamped k x k window, by sorting.
inline icc::RasterImage median(const icc::RasterImage& img, int k) {
    icc::RasterImage out(img.width(), img.height());
    const int r = k / 2;
    std::vector<int> v[3];
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            for (auto& c : v) c.clear();
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const auto p = img.clamped(x + dx, y + dy);
                    v[0].push_back(p.r);
                    v[1].push_back(p.g);
                    v[2].push_back(p.b);
                }
            for (auto& c : v) std::sort(c.begin(), c.end());
            const std::size_t m = v[0].size() / 2;
            out.at(x, y) = {static_cast<std::uint8_t>(v[0][m]), static_cast<std::uint8_t>(v[1][m]),
                            static_cast<std::uint8_t>(v[2][m])};
        }
    return out;
}

/// Separable-free Gaussian blur over a d x d clamped window.
inline std::vector<double> gaussian_blur_channel(const icc::RasterImage& img, int d, double sigma, int ch) {
    const int r = d / 2;
    std::vector<double> out(img.size());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double num = 0, den = 0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const double w = std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
                    const auto p = img.clamped(x + dx, y + dy);
                    const int v = ch == 0 ? p.r : ch == 1 ? p.g : p.b;
                    num += w * v;
                    den += w;
                }
            out[static_cast<std::size_t>(y) * img.width() + x] = num / den;
        }
    return out;
}

/// Set-definition dilation/erosion with a square element, clamped edges:
/// a pixel's neighbourhood is the set of clamped coordinates.
inline icc::BinaryMask dilate(const icc::BinaryMask& m, int r) {
    icc::BinaryMask out(m.width(), m.height());
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x) {
            bool any = false;
            for (int dy = -r; dy <= r && !any; ++dy)
                for (int dx = -r; dx <= r && !any; ++dx) any = m.clamped(x + dx, y + dy) != 0;
            out.at(x, y) = any ? 1 : 0;
        }
    return out;
}

inline icc::BinaryMask erode(const icc::BinaryMask& m, int r) {
    icc::BinaryMask out(m.width(), m.height());
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x) {
            bool all = true;
            for (int dy = -r; dy <= r && all; ++dy)
                for (int dx = -r; dx <= r && all; ++dx) all = m.clamped(x + dx, y + dy) != 0;
            out.at(x, y) = all ? 1 : 0;
        }
    return out;
}

/// 4-connected component count of the set of true cells on a w x h grid.
inline int components(int w, int h, const std::function<bool(int, int)>& cell) {
    std::vector<int> seen(static_cast<std::size_t>(w) * h, 0);
    int count = 0;
    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (seen[static_cast<std::size_t>(y) * w + x] || !cell(x, y)) continue;
            ++count;
            stack.push_back({x, y});
            seen[static_cast<std::size_t>(y) * w + x] = 1;
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
                for (const auto& d : nb) {
                    const int nx = cx + d[0], ny = cy + d[1];
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    auto& s = seen[static_cast<std::size_t>(ny) * w + nx];
                    if (!s && cell(nx, ny)) {
                        s = 1;
                        stack.push_back({nx, ny});
                    }
                }
            }
        }
    return count;
}

inline double distance_point_line(Point2 p, Point2 a, Point2 b) {
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    return std::abs((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)) / len;
}

}  // namespace oracle
