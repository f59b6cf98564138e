#include "icc/imaging.hpp"

#include "parallel.hpp"

#include <array>
#include <cmath>

namespace icc {

std::size_t count_set(const BinaryMask& mask) {
    return static_cast<std::size_t>(
        std::count_if(mask.data().begin(), mask.data().end(), [](std::uint8_t v) { return v != 0; }));
}

BinaryMask complement(const BinaryMask& mask) {
    BinaryMask out = mask;
    for (auto& v : out.data()) v = v ? 0 : 1;
    return out;
}

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b) {
    if (!a.same_shape(b)) throw InvalidParameter("mask_union: dimension mismatch");
    BinaryMask out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = (a.data()[i] || b.data()[i]) ? 1 : 0;
    return out;
}

RasterImage median_filter(const RasterImage& img, int kernel, int threads) {
    if (kernel < 1 || kernel % 2 == 0)
        throw InvalidParameter("median_filter: kernel must be odd and >= 1");
    if (kernel == 1) return img;
    const int r = kernel / 2;
    const auto n = static_cast<std::size_t>(kernel * kernel);
    const std::size_t mid = n / 2;
    RasterImage out(img.width(), img.height());

    detail::parallel_rows(img.height(), threads, [&](int y0, int y1) {
        std::array<std::vector<std::uint8_t>, 3> window;
        for (auto& w : window) w.resize(n);
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < img.width(); ++x) {
                std::size_t i = 0;
                for (int dy = -r; dy <= r; ++dy) {
                    for (int dx = -r; dx <= r; ++dx, ++i) {
                        const Rgb& p = img.clamped(x + dx, y + dy);
                        window[0][i] = p.r;
                        window[1][i] = p.g;
                        window[2][i] = p.b;
                    }
                }
                std::array<std::uint8_t, 3> med{};
                for (int c = 0; c < 3; ++c) {
                    auto& w = window[static_cast<std::size_t>(c)];
                    std::nth_element(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(mid), w.end());
                    med[static_cast<std::size_t>(c)] = w[mid];
                }
                out.at(x, y) = {med[0], med[1], med[2]};
            }
        }
    });
    return out;
}

RasterImage bilateral_filter(const RasterImage& img, int diameter, double sigma_color,
                             double sigma_space, int threads) {
    if (diameter < 1 || diameter % 2 == 0)
        throw InvalidParameter("bilateral_filter: diameter must be odd and >= 1");
    if (!(sigma_color > 0.0) || !(sigma_space > 0.0))
        throw InvalidParameter("bilateral_filter: sigmas must be positive");
    const int r = diameter / 2;

    // Square window; spatial and range weights are Gaussians on squared distances.
    std::vector<double> space_w(static_cast<std::size_t>(diameter * diameter));
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            space_w[static_cast<std::size_t>((dy + r) * diameter + dx + r)] =
                std::exp(-(dx * dx + dy * dy) / (2.0 * sigma_space * sigma_space));
    constexpr int kMaxColorDistSq = 3 * 255 * 255;
    std::vector<double> color_w(kMaxColorDistSq + 1);
    for (int d = 0; d <= kMaxColorDistSq; ++d)
        color_w[static_cast<std::size_t>(d)] = std::exp(-d / (2.0 * sigma_color * sigma_color));

    RasterImage out(img.width(), img.height());
    detail::parallel_rows(img.height(), threads, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < img.width(); ++x) {
                const Rgb c = img.at(x, y);
                double sum_w = 0.0, sr = 0.0, sg = 0.0, sb = 0.0;
                for (int dy = -r; dy <= r; ++dy) {
                    for (int dx = -r; dx <= r; ++dx) {
                        const Rgb q = img.clamped(x + dx, y + dy);
                        const int dr = q.r - c.r, dg = q.g - c.g, db = q.b - c.b;
                        const double w =
                            space_w[static_cast<std::size_t>((dy + r) * diameter + dx + r)] *
                            color_w[static_cast<std::size_t>(dr * dr + dg * dg + db * db)];
                        sum_w += w;
                        sr += w * q.r;
                        sg += w * q.g;
                        sb += w * q.b;
                    }
                }
                auto to_u8 = [&](double v) {
                    return static_cast<std::uint8_t>(std::clamp(std::lround(v / sum_w), 0L, 255L));
                };
                out.at(x, y) = {to_u8(sr), to_u8(sg), to_u8(sb)};
            }
        }
    });
    return out;
}

}  // namespace icc
