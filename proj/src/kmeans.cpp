#include "icc/imaging.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace icc {

namespace {

// Unique colours with their pixel counts; the clustering runs on this
// histogram, which makes every sum an exact integer and the result
// independent of pixel order.
struct ColorBin {
    std::array<int, 3> rgb;
    std::int64_t count;
};

std::uint32_t pack(Rgb c) {
    return (static_cast<std::uint32_t>(c.r) << 16) | (static_cast<std::uint32_t>(c.g) << 8) | c.b;
}

// Portable uniform double in [0, 1) from the raw 64-bit engine output.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double dist_sq(const std::array<int, 3>& a, const std::array<double, 3>& b) {
    double s = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
        const double d = a[c] - b[c];
        s += d * d;
    }
    return s;
}

std::pair<int, double> nearest(const std::array<int, 3>& rgb, const Palette& centers) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centers.size(); ++j) {
        const double d = dist_sq(rgb, centers[j]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(j);
        }
    }
    return {best, best_d};
}

// Index of the bin holding the `target`-th unit of mass under `weights`.
std::size_t pick_weighted(const std::vector<double>& weights, double target) {
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        last_positive = i;
        acc += weights[i];
        if (target < acc) return i;
    }
    return last_positive;
}

}  // namespace

KMeansResult kmeans_colors(const RasterImage& img, int k, std::uint64_t seed, int max_iters,
                           double tol) {
    if (k < 2) throw InvalidParameter("kmeans_colors: k must be >= 2");
    if (max_iters < 1) throw InvalidParameter("kmeans_colors: max_iters must be >= 1");
    if (!(tol >= 0.0)) throw InvalidParameter("kmeans_colors: tol must be non-negative");

    std::map<std::uint32_t, std::int64_t> histogram;
    for (const Rgb& p : img.data()) ++histogram[pack(p)];
    std::vector<ColorBin> bins;
    bins.reserve(histogram.size());
    for (const auto& [key, count] : histogram)
        bins.push_back({{static_cast<int>(key >> 16), static_cast<int>((key >> 8) & 0xFF),
                         static_cast<int>(key & 0xFF)},
                        count});

    KMeansResult result;
    result.effective_k = std::min<int>(k, static_cast<int>(bins.size()));
    const auto kk = static_cast<std::size_t>(result.effective_k);

    // k-means++ seeding over pixels (bins weighted by their counts).
    std::mt19937_64 rng(seed);
    Palette centers;
    centers.reserve(kk);
    {
        std::vector<double> weights(bins.size());
        for (std::size_t i = 0; i < bins.size(); ++i) weights[i] = static_cast<double>(bins[i].count);
        const double total = static_cast<double>(img.size());
        const auto& first = bins[pick_weighted(weights, uniform01(rng) * total)].rgb;
        centers.push_back({double(first[0]), double(first[1]), double(first[2])});
        std::vector<double> d2(bins.size(), std::numeric_limits<double>::infinity());
        while (centers.size() < kk) {
            double mass = 0.0;
            for (std::size_t i = 0; i < bins.size(); ++i) {
                d2[i] = std::min(d2[i], dist_sq(bins[i].rgb, centers.back()));
                weights[i] = d2[i] * static_cast<double>(bins[i].count);
                mass += weights[i];
            }
            const auto& next = bins[pick_weighted(weights, uniform01(rng) * mass)].rgb;
            centers.push_back({double(next[0]), double(next[1]), double(next[2])});
        }
    }

    std::vector<int> assignment(bins.size(), 0);
    for (int iter = 0; iter < max_iters; ++iter) {
        double inertia = 0.0;
        std::vector<std::array<std::int64_t, 3>> sums(kk, {0, 0, 0});
        std::vector<std::int64_t> counts(kk, 0);
        for (std::size_t i = 0; i < bins.size(); ++i) {
            const auto [label, d] = nearest(bins[i].rgb, centers);
            assignment[i] = label;
            inertia += d * static_cast<double>(bins[i].count);
            const auto l = static_cast<std::size_t>(label);
            counts[l] += bins[i].count;
            for (std::size_t c = 0; c < 3; ++c) sums[l][c] += bins[i].count * bins[i].rgb[c];
        }
        result.inertia_history.push_back(inertia);
        result.iterations = iter + 1;

        double max_shift = 0.0;
        for (std::size_t j = 0; j < kk; ++j) {
            if (counts[j] == 0) continue;  // empty cluster keeps its centre
            std::array<double, 3> updated{};
            for (std::size_t c = 0; c < 3; ++c)
                updated[c] = static_cast<double>(sums[j][c]) / static_cast<double>(counts[j]);
            double shift = 0.0;
            for (std::size_t c = 0; c < 3; ++c) shift += (updated[c] - centers[j][c]) * (updated[c] - centers[j][c]);
            max_shift = std::max(max_shift, std::sqrt(shift));
            centers[j] = updated;
        }
        if (max_shift < tol) break;
    }

    // Final labels against the final centres.
    double inertia = 0.0;
    std::map<std::uint32_t, int> label_of;
    for (const auto& bin : bins) {
        const auto [label, d] = nearest(bin.rgb, centers);
        inertia += d * static_cast<double>(bin.count);
        label_of[(static_cast<std::uint32_t>(bin.rgb[0]) << 16) |
                 (static_cast<std::uint32_t>(bin.rgb[1]) << 8) | static_cast<std::uint32_t>(bin.rgb[2])] =
            label;
    }
    result.inertia_history.push_back(inertia);

    result.palette = std::move(centers);
    result.labels.k = result.effective_k;
    result.labels.labels = Grid<int>(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i)
        result.labels.labels.data()[i] = label_of.at(pack(img.data()[i]));
    return result;
}

}  // namespace icc
