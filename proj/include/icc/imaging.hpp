#pragma once

/**
 * @file imaging.hpp
 * @brief Raster types and the neighbourhood operators used by the
 *        foreground/background branch.
 *
 * Every neighbourhood operator clamps reads to the nearest edge pixel. All
 * operators are deterministic; the optional `threads` argument only changes
 * how rows are distributed, never the result.
 */

#include "icc/error.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace icc {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(Rgb, Rgb) = default;
};

template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, T fill = T{});

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool same_shape(int w, int h) const { return w == width_ && h == height_; }
    template <typename U>
    bool same_shape(const Grid<U>& other) const {
        return same_shape(other.width(), other.height());
    }

    T& at(int x, int y) { return data_[index(x, y)]; }
    const T& at(int x, int y) const { return data_[index(x, y)]; }
    const T& clamped(int x, int y) const;

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

template <typename T>
Grid<T>::Grid(int width, int height, T fill) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw InvalidParameter("raster dimensions must be positive");
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

template <typename T>
const T& Grid<T>::clamped(int x, int y) const {
    return at(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
}

using RasterImage = Grid<Rgb>;
/// 0/1 per pixel.
using BinaryMask = Grid<std::uint8_t>;

struct LabelMap {
    Grid<int> labels;
    int k = 0;
};

using Palette = std::vector<std::array<double, 3>>;

std::size_t count_set(const BinaryMask& mask);
BinaryMask complement(const BinaryMask& mask);
BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b);

RasterImage median_filter(const RasterImage& img, int kernel, int threads = 1);

RasterImage bilateral_filter(const RasterImage& img, int diameter, double sigma_color,
                             double sigma_space, int threads = 1);

/// Telea fast-marching inpainting. Pixels outside `mask` are copied verbatim;
/// masked pixels are filled in order of increasing distance from the mask
/// boundary as a weighted average of already known pixels within `radius`.
/// Throws InpaintUnderconstrained when no pixel is known.
RasterImage inpaint_fmm(const RasterImage& img, const BinaryMask& mask, int radius);

struct KMeansResult {
    Palette palette;
    LabelMap labels;
    /// Cluster count actually used (reduced when the image has fewer colours).
    int effective_k = 0;
    int iterations = 0;
    /// Inertia after each assignment step, in order.
    std::vector<double> inertia_history;

    double inertia() const { return inertia_history.empty() ? 0.0 : inertia_history.back(); }
};

/// Colour-only k-means in RGB with k-means++ seeding driven by `seed`.
KMeansResult kmeans_colors(const RasterImage& img, int k, std::uint64_t seed, int max_iters = 50,
                           double tol = 0.5);

enum class MorphOp { Dilate, Erode, Open, Close };

/// Binary morphology with a (2r+1) x (2r+1) square structuring element.
/// Open and Close apply `iterations` erosions/dilations back to back.
BinaryMask morphology(const BinaryMask& mask, MorphOp op, int se_radius, int iterations = 1);

}  // namespace icc
