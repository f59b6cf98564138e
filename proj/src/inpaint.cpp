#include "icc/imaging.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <queue>
#include <tuple>

namespace icc {

namespace {

enum class Flag : std::uint8_t { Known, Band, Inside };

constexpr double kFar = 1e6;
constexpr std::array<std::array<int, 2>, 4> kNeighbours{{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};

using HeapEntry = std::tuple<double, std::size_t>;
using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

struct Field {
    int width;
    int height;
    Grid<Flag> flags;
    Grid<double> t;

    Field(int w, int h) : width(w), height(h), flags(w, h, Flag::Known), t(w, h, 0.0) {}

    bool in_image(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }

    std::optional<double> settled(int x, int y) const {
        if (!in_image(x, y) || flags.at(x, y) == Flag::Inside) return std::nullopt;
        return t.at(x, y);
    }

    // First-order eikonal update from one horizontal and one vertical neighbour.
    double solve_pair(int x1, int y1, int x2, int y2) const {
        const auto a = settled(x1, y1);
        const auto b = settled(x2, y2);
        if (a && b) {
            const double diff = *a - *b;
            if (diff * diff < 2.0) {
                const double r = std::sqrt(2.0 - diff * diff);
                double s = 0.5 * (*a + *b - r);
                if (s >= *a && s >= *b) return s;
                s += r;
                if (s >= *a && s >= *b) return s;
            }
            return 1.0 + std::min(*a, *b);
        }
        if (a) return 1.0 + *a;
        if (b) return 1.0 + *b;
        return kFar;
    }

    double arrival(int x, int y) const {
        return std::min({solve_pair(x, y - 1, x - 1, y), solve_pair(x, y + 1, x - 1, y),
                         solve_pair(x, y - 1, x + 1, y), solve_pair(x, y + 1, x + 1, y)});
    }

    // One-sided or central difference of T, using settled neighbours only.
    double partial(int x, int y, int dx, int dy) const {
        const auto fwd = settled(x + dx, y + dy);
        const auto bwd = settled(x - dx, y - dy);
        const double here = t.at(x, y);
        if (fwd && bwd) return 0.5 * (*fwd - *bwd);
        if (fwd) return *fwd - here;
        if (bwd) return here - *bwd;
        return 0.0;
    }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(x);
    }
};

// Distance from the mask over the known region, capped at `limit`, stored
// negated so that T increases monotonically across the mask boundary.
void march_outside(const BinaryMask& mask, Field& field, double limit) {
    const int w = field.width, h = field.height;
    Field outer(w, h);
    MinHeap heap;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (mask.at(x, y)) continue;  // mask pixels act as the zero level
            bool touches = false;
            for (const auto& [dx, dy] : kNeighbours) {
                const int nx = x + dx, ny = y + dy;
                touches |= outer.in_image(nx, ny) && mask.at(nx, ny);
            }
            if (touches) {
                outer.flags.at(x, y) = Flag::Band;
                heap.emplace(0.0, outer.index(x, y));
            } else {
                outer.flags.at(x, y) = Flag::Inside;
                outer.t.at(x, y) = kFar;
            }
        }
    }
    while (!heap.empty()) {
        const auto [dist, idx] = heap.top();
        heap.pop();
        const int x = static_cast<int>(idx % static_cast<std::size_t>(w));
        const int y = static_cast<int>(idx / static_cast<std::size_t>(w));
        if (outer.flags.at(x, y) == Flag::Known) continue;
        outer.flags.at(x, y) = Flag::Known;
        if (dist > limit) continue;
        for (const auto& [dx, dy] : kNeighbours) {
            const int nx = x + dx, ny = y + dy;
            if (!outer.in_image(nx, ny) || outer.flags.at(nx, ny) != Flag::Inside) continue;
            const double d = outer.arrival(nx, ny);
            outer.t.at(nx, ny) = d;
            outer.flags.at(nx, ny) = Flag::Band;
            heap.emplace(d, outer.index(nx, ny));
        }
    }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (!mask.at(x, y)) field.t.at(x, y) = -std::min(outer.t.at(x, y), limit);
}

using ChannelGradients = std::array<std::array<double, 2>, 3>;

// Per-channel image gradient at a known pixel, from known neighbours only.
ChannelGradients image_gradient(const RasterImage& img, const Field& field, int x, int y) {
    auto known = [&](int qx, int qy) { return field.in_image(qx, qy) && field.flags.at(qx, qy) != Flag::Inside; };
    auto channel = [](Rgb p, int c) { return c == 0 ? double(p.r) : c == 1 ? double(p.g) : double(p.b); };
    ChannelGradients g{};
    for (int axis = 0; axis < 2; ++axis) {
        const int dx = axis == 0 ? 1 : 0, dy = axis == 0 ? 0 : 1;
        const bool fwd = known(x + dx, y + dy), bwd = known(x - dx, y - dy);
        for (int c = 0; c < 3; ++c) {
            const double here = channel(img.at(x, y), c);
            if (fwd && bwd)
                g[c][axis] = 0.5 * (channel(img.at(x + dx, y + dy), c) - channel(img.at(x - dx, y - dy), c));
            else if (fwd)
                g[c][axis] = channel(img.at(x + dx, y + dy), c) - here;
            else if (bwd)
                g[c][axis] = here - channel(img.at(x - dx, y - dy), c);
        }
    }
    return g;
}

}  // namespace

RasterImage inpaint_fmm(const RasterImage& img, const BinaryMask& mask, int radius) {
    if (!mask.same_shape(img)) throw InvalidParameter("inpaint_fmm: mask dimensions differ from image");
    if (radius < 1) throw InvalidParameter("inpaint_fmm: radius must be >= 1");
    const std::size_t holes = count_set(mask);
    if (holes == 0) return img;
    if (holes == mask.size())
        throw InpaintUnderconstrained("inpaint_fmm: mask covers the whole image");

    const int w = img.width(), h = img.height();
    Field field(w, h);
    march_outside(mask, field, static_cast<double>(radius) + 2.0);

    MinHeap heap;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (mask.at(x, y)) {
                field.flags.at(x, y) = Flag::Inside;
                field.t.at(x, y) = kFar;
                continue;
            }
            bool touches = false;
            for (const auto& [dx, dy] : kNeighbours) {
                const int nx = x + dx, ny = y + dy;
                touches |= field.in_image(nx, ny) && mask.at(nx, ny);
            }
            if (touches) {
                field.flags.at(x, y) = Flag::Band;
                field.t.at(x, y) = 0.0;
                heap.emplace(0.0, field.index(x, y));
            }
        }
    }

    RasterImage out = img;
    const int r2 = radius * radius;
    while (!heap.empty()) {
        const auto [dist, idx] = heap.top();
        heap.pop();
        const int px = static_cast<int>(idx % static_cast<std::size_t>(w));
        const int py = static_cast<int>(idx / static_cast<std::size_t>(w));
        if (field.flags.at(px, py) == Flag::Known) continue;
        field.flags.at(px, py) = Flag::Known;

        for (const auto& [ndx, ndy] : kNeighbours) {
            const int x = px + ndx, y = py + ndy;
            if (!field.in_image(x, y) || field.flags.at(x, y) != Flag::Inside) continue;
            const double tp = field.arrival(x, y);
            field.t.at(x, y) = tp;
            const double gx = field.partial(x, y, 1, 0);
            const double gy = field.partial(x, y, 0, 1);

            double sum_w = 0.0;
            std::array<double, 3> acc{};
            for (int dy = -radius; dy <= radius; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    const int d2 = dx * dx + dy * dy;
                    if (d2 == 0 || d2 > r2) continue;
                    const int qx = x + dx, qy = y + dy;
                    if (!field.in_image(qx, qy) || field.flags.at(qx, qy) == Flag::Inside) continue;
                    // r points from the neighbour q to the pixel being filled.
                    const double rx = -dx, ry = -dy;
                    const double dst = 1.0 / (d2 * std::sqrt(static_cast<double>(d2)));
                    const double lev = 1.0 / (1.0 + std::abs(field.t.at(qx, qy) - tp));
                    double dir = rx * gx + ry * gy;
                    if (std::abs(dir) <= 0.01) dir = 1e-6;
                    const double wgt = std::abs(dst * lev * dir);
                    const Rgb q = out.at(qx, qy);
                    const auto grad = image_gradient(out, field, qx, qy);
                    const std::array<double, 3> value{double(q.r), double(q.g), double(q.b)};
                    for (int c = 0; c < 3; ++c)
                        acc[c] += wgt * (value[c] + grad[c][0] * rx + grad[c][1] * ry);
                    sum_w += wgt;
                }
            }
            auto to_u8 = [&](double v) {
                return static_cast<std::uint8_t>(std::clamp(std::lround(v / sum_w), 0L, 255L));
            };
            out.at(x, y) = {to_u8(acc[0]), to_u8(acc[1]), to_u8(acc[2])};
            field.flags.at(x, y) = Flag::Band;
            heap.emplace(tp, field.index(x, y));
        }
    }
    return out;
}

}  // namespace icc
