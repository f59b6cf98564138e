#include "icc/error.hpp"
#include "icc/fgbg.hpp"

#include "support/oracles.hpp"
#include "support/scenes.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace icc;

namespace {

/// Pose whose detected joints are exactly `pts`.
PersonPose pose_of(const std::vector<Point2>& pts) {
    PersonPose p;
    for (int i = 0; i < kBodyKeypoints; ++i) p.keypoints[i] = {{0, 0}, 0.0, i};
    for (std::size_t i = 0; i < pts.size(); ++i) p.keypoints[i] = {pts[i], 0.9, static_cast<int>(i)};
    return p;
}

struct Box {
    int x0, y0, x1, y1;
};

Box bounds(const BinaryMask& m) {
    Box b{m.width(), m.height(), -1, -1};
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            if (m.at(x, y)) {
                b.x0 = std::min(b.x0, x);
                b.y0 = std::min(b.y0, y);
                b.x1 = std::max(b.x1, x);
                b.y1 = std::max(b.y1, y);
            }
    return b;
}

/// Labels 0..n-1 laid out so label c covers counts[c] pixels of a w-wide map.
LabelMap labels_with_counts(int w, int h, const std::vector<int>& counts) {
    LabelMap lm{Grid<int>(w, h, static_cast<int>(counts.size()) - 1), static_cast<int>(counts.size())};
    std::size_t i = 0;
    for (std::size_t c = 0; c < counts.size(); ++c)
        for (int n = 0; n < counts[c]; ++n) lm.labels.data()[i++] = static_cast<int>(c);
    return lm;
}

}  // namespace

TEST_SUITE("fgbg") {

TEST_CASE("body_masks scale the hull about its centroid") {
    const auto p = pose_of({{100, 100}, {200, 100}, {200, 300}, {100, 300}, {150, 200}});
    const std::vector<PersonPose> people{p};
    const auto masks = body_masks(people, 400, 500);
    const auto in = bounds(masks.inpaint_mask), core = bounds(masks.core_mask);
    CHECK(in.x1 - in.x0 + 1 == doctest::Approx(170).epsilon(0.02));
    CHECK(in.y1 - in.y0 + 1 == doctest::Approx(280).epsilon(0.02));
    CHECK(core.x1 - core.x0 + 1 == doctest::Approx(100).epsilon(0.02));
    CHECK(core.y1 - core.y0 + 1 == doctest::Approx(140).epsilon(0.02));
    CHECK((in.x0 + in.x1) / 2.0 == doctest::Approx(150).epsilon(0.01));
    CHECK((core.y0 + core.y1) / 2.0 == doctest::Approx(200).epsilon(0.01));
    for (int y = 0; y < 500; ++y)
        for (int x = 0; x < 400; ++x)
            if (masks.core_mask.at(x, y)) CHECK(masks.inpaint_mask.at(x, y));
}

TEST_CASE("body_masks union, clipping and eligibility") {
    const auto a = pose_of({{10, 10}, {60, 10}, {60, 80}, {10, 80}});
    const auto b = pose_of({{200, 10}, {260, 10}, {260, 90}, {200, 90}});
    const std::vector<PersonPose> pa{a}, pb{b}, both{a, b};
    const auto ma = body_masks(pa, 300, 150, {1, 1}, {1, 1});
    const auto mb = body_masks(pb, 300, 150, {1, 1}, {1, 1});
    const auto mab = body_masks(both, 300, 150, {1, 1}, {1, 1});
    CHECK(count_set(mab.core_mask) == count_set(ma.core_mask) + count_set(mb.core_mask));
    CHECK(count_set(ma.core_mask) == 51 * 71);

    const auto outside = pose_of({{500, 500}, {560, 500}, {560, 580}});
    const std::vector<PersonPose> with_outside{a, outside};
    CHECK(body_masks(with_outside, 300, 150) == body_masks(pa, 300, 150));

    const auto collinear = pose_of({{10, 10}, {20, 20}, {30, 30}, {40, 40}});
    const auto pair = pose_of({{10, 10}, {20, 20}});
    const std::vector<PersonPose> none{collinear, pair};
    CHECK_THROWS_AS(body_masks(none, 100, 100), NoForegroundEvidence);
    CHECK_THROWS_AS(body_masks(std::vector<PersonPose>{}, 100, 100), NoForegroundEvidence);
}

TEST_CASE("body_masks are translation-equivariant") {
    const auto p = scene::figure({120, 60}, 15, 1, 10);
    const std::vector<PersonPose> base{p};
    const auto m0 = body_masks(base, 300, 260);
    for (auto [dx, dy] : {std::pair{7, 0}, {0, 13}, {-9, 21}}) {
        auto q = p;
        for (auto& k : q.keypoints) k.position = k.position + Point2{double(dx), double(dy)};
        const std::vector<PersonPose> moved{q};
        const auto m1 = body_masks(moved, 300, 260);
        for (const auto& [a, b] : {std::pair{&m0.inpaint_mask, &m1.inpaint_mask}, {&m0.core_mask, &m1.core_mask}}) {
            int mismatched = 0, set = 0;
            for (int y = 0; y < 260; ++y)
                for (int x = 0; x < 300; ++x) {
                    if (!a->at(x, y)) continue;
                    ++set;
                    const int sx = x + dx, sy = y + dy;
                    if (sx < 0 || sy < 0 || sx >= 300 || sy >= 260) continue;
                    if (b->at(sx, sy)) continue;
                    // allow one pixel of rasterisation slack
                    bool near = false;
                    for (int oy = -1; oy <= 1; ++oy)
                        for (int ox = -1; ox <= 1; ++ox) near = near || b->clamped(sx + ox, sy + oy);
                    if (!near) ++mismatched;
                }
            CHECK(set > 0);
            CHECK(mismatched == 0);
        }
    }
}

TEST_CASE("elect_fg_colors uses a strict threshold") {
    const auto lm = labels_with_counts(10, 10, {50, 40, 6, 4});
    const BinaryMask all(10, 10, 1);
    const auto fg = elect_fg_colors(lm, all, 0.06);
    CHECK(fg.elected == std::vector<int>{0, 1});
    CHECK(fg.dominant == 0);
    CHECK_FALSE(fg.fallback);
    CHECK(fg.shares[2] == doctest::Approx(0.06));

    const auto only3 = labels_with_counts(5, 4, {0, 0, 0, 20});
    CHECK(elect_fg_colors(only3, BinaryMask(5, 4, 1), 0.06).elected == std::vector<int>{3});

    const auto tie = labels_with_counts(10, 2, {10, 10});
    const auto t = elect_fg_colors(tie, BinaryMask(10, 2, 1), 0.06);
    CHECK(t.dominant == 0);
    CHECK(t.elected == std::vector<int>{0, 1});
}

TEST_CASE("elect_fg_colors tie-break against an exhaustive oracle") {
    // every split of 6 mask pixels over 3 clusters
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; a + b <= 6; ++b) {
            const int c = 6 - a - b;
            const auto lm = labels_with_counts(6, 1, {a, b, c});
            const auto fg = elect_fg_colors(lm, BinaryMask(6, 1, 1), 0.3);
            const std::array<int, 3> n{a, b, c};
            int dominant = 0;
            for (int i = 1; i < 3; ++i)
                if (n[i] > n[dominant]) dominant = i;
            std::vector<int> elected;
            for (int i = 0; i < 3; ++i)
                if (n[i] / 6.0 > 0.3) elected.push_back(i);
            CHECK(fg.dominant == dominant);
            if (elected.empty()) {
                CHECK(fg.fallback);
                CHECK(fg.elected == std::vector<int>{dominant});
            } else {
                CHECK(fg.elected == elected);
            }
        }
}

TEST_CASE("elect_fg_colors fallback and errors") {
    const auto lm = labels_with_counts(10, 10, {25, 25, 25, 25});
    const auto fg = elect_fg_colors(lm, BinaryMask(10, 10, 1), 0.5);
    CHECK(fg.fallback);
    CHECK(fg.elected == std::vector<int>{0});
    CHECK_THROWS_AS(elect_fg_colors(lm, BinaryMask(10, 10), 0.06), NoForegroundEvidence);
    CHECK_THROWS_AS(elect_fg_colors(lm, BinaryMask(10, 10, 1), 0.0), InvalidParameter);
    CHECK_THROWS_AS(elect_fg_colors(lm, BinaryMask(10, 10, 1), 1.0), InvalidParameter);
    CHECK_THROWS_AS(elect_fg_colors(lm, BinaryMask(9, 10, 1), 0.06), InvalidParameter);
}

TEST_CASE("colored_canvas") {
    LabelMap checker{Grid<int>(8, 8), 2};
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) checker.labels.at(x, y) = (x + y) % 2;
    const Palette palette{{10, 20, 30}, {200, 100, 50}};

    FgColorSet both;
    both.elected = {0, 1};
    both.dominant = 1;
    const auto all = colored_canvas(checker, palette, both, 1);
    for (const auto& p : all.data()) CHECK(p == Rgb{200, 100, 50});

    FgColorSet one;
    one.elected = {0};
    one.dominant = 0;
    const auto two = colored_canvas(checker, palette, one, 1);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
            CHECK(two.at(x, y) == ((x + y) % 2 ? Rgb{200, 100, 50} : Rgb{10, 20, 30}));

    // without the median every pixel is a palette colour
    const auto lm = labels_with_counts(20, 20, {100, 100, 100, 100});
    const Palette p4{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {10.4, 11.6, 12}};
    FgColorSet fg;
    fg.elected = {1, 3};
    fg.dominant = 3;
    const auto rounded = colored_canvas(lm, p4, fg, 1);
    for (const auto& px : rounded.data()) {
        const bool ok = px == Rgb{1, 2, 3} || px == Rgb{7, 8, 9} || px == Rgb{10, 12, 12};
        CHECK(ok);
    }
}

TEST_CASE("raw foreground is exactly the elected labels and binary canvas cleans it") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> u(0, 4);
    LabelMap lm{Grid<int>(40, 30), 5};
    for (auto& v : lm.labels.data()) v = u(rng);
    FgColorSet fg;
    fg.elected = {1, 4};
    fg.dominant = 4;
    const auto raw = raw_foreground(lm, fg);
    for (std::size_t i = 0; i < raw.size(); ++i)
        CHECK((raw.data()[i] == 1) == (lm.labels.data()[i] == 1 || lm.labels.data()[i] == 4));
    CHECK(binary_canvas(lm, fg, 0, 0) == raw);
    CHECK(binary_canvas(lm, fg, 1, 2) == oracle::dilate(oracle::erode(oracle::erode(oracle::dilate(raw, 1), 1), 2), 2));

    FgColorSet everything;
    everything.elected = {0, 1, 2, 3, 4};
    everything.dominant = 0;
    CHECK(count_set(binary_canvas(lm, everything, 1, 2)) == lm.labels.size());

    // pinholes close, speckles vanish
    LabelMap blob{Grid<int>(30, 30), 2};
    for (int y = 5; y < 25; ++y)
        for (int x = 5; x < 25; ++x) blob.labels.at(x, y) = 1;
    blob.labels.at(12, 12) = 0;
    blob.labels.at(1, 28) = 1;
    FgColorSet fg1;
    fg1.elected = {1};
    fg1.dominant = 1;
    const auto clean = binary_canvas(blob, fg1, 1, 2);
    CHECK(clean.at(12, 12) == 1);
    CHECK(clean.at(1, 28) == 0);
}

TEST_CASE("election debug canvas paints rejected core pixels blue") {
    const auto lm = labels_with_counts(10, 10, {50, 40, 6, 4});
    const Palette palette{{200, 0, 0}, {0, 200, 0}, {50, 50, 50}, {90, 90, 90}};
    const BinaryMask all(10, 10, 1);
    const auto fg = elect_fg_colors(lm, all, 0.06);
    const auto dbg = election_debug_canvas(lm, palette, fg, all);
    CHECK(dbg.data()[0] == Rgb{200, 0, 0});
    CHECK(dbg.data()[95] == Rgb{0, 0, 255});
}

}  // TEST_SUITE
