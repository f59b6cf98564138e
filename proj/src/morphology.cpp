#include "icc/imaging.hpp"

namespace icc {

namespace {

// Square structuring elements are separable: a row pass then a column pass.
BinaryMask sweep(const BinaryMask& in, int r, bool dilate) {
    const int w = in.width(), h = in.height();
    const std::uint8_t hit = dilate ? 1 : 0;
    BinaryMask rows(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t v = 1 - hit;
            for (int d = -r; d <= r && v != hit; ++d)
                if ((in.clamped(x + d, y) != 0) == dilate) v = hit;
            rows.at(x, y) = v;
        }
    }
    BinaryMask out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t v = 1 - hit;
            for (int d = -r; d <= r && v != hit; ++d)
                if ((rows.clamped(x, y + d) != 0) == dilate) v = hit;
            out.at(x, y) = v;
        }
    }
    return out;
}

BinaryMask repeat(BinaryMask m, int r, bool dilate, int times) {
    for (int i = 0; i < times; ++i) m = sweep(m, r, dilate);
    return m;
}

}  // namespace

BinaryMask morphology(const BinaryMask& mask, MorphOp op, int se_radius, int iterations) {
    if (se_radius < 1) throw InvalidParameter("morphology: structuring element radius must be >= 1");
    if (iterations < 1) throw InvalidParameter("morphology: iterations must be >= 1");
    switch (op) {
        case MorphOp::Dilate: return repeat(mask, se_radius, true, iterations);
        case MorphOp::Erode: return repeat(mask, se_radius, false, iterations);
        case MorphOp::Open:
            return repeat(repeat(mask, se_radius, false, iterations), se_radius, true, iterations);
        case MorphOp::Close:
            return repeat(repeat(mask, se_radius, true, iterations), se_radius, false, iterations);
    }
    throw InvalidParameter("morphology: unknown operation");
}

}  // namespace icc
