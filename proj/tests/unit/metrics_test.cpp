#include "icc/error.hpp"
#include "icc/gaze.hpp"
#include "icc/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace icc;

namespace {

CompositionResult one_region(int w, int h, Point2 centroid, double slope) {
    CompositionResult r;
    r.image_id = "img";
    r.width = w;
    r.height = h;
    ActionRegion ar;
    ar.centroid = centroid;
    ar.area = 100;
    r.action_regions = {ar};
    r.global_slope = Angle{slope};
    r.action_lines = action_lines(r.action_regions, *r.global_slope);
    return r;
}

Annotator annotator(std::string id, bool expert, std::vector<Point2> ars, std::vector<Segment> als = {}) {
    return {std::move(id), expert, std::move(ars), std::move(als), {}};
}

bool all_zero(const MetricsReport& m) {
    for (const auto& v : {m.sd_ar_expert, m.sd_ar_nonexpert, m.l2_e_icc, m.l2_ne_icc, m.l2_e_ne,
                          m.hd_all_icc, m.ad_all_icc})
        if (!v || std::abs(*v) > 1e-9) return false;
    return true;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("normalize_points") {
    const std::vector<Point2> pts{{100, 50}, {0, 0}, {200, 100}};
    const auto n = normalize_points(pts, 200, 100);
    CHECK(n[0] == Point2{0.5, 0.5});
    CHECK(n[1] == Point2{0, 0});
    CHECK(n[2] == Point2{1, 1});
    const auto back = denormalize_points(n, 200, 100);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(distance(back[i], pts[i]) < 1e-12);
    CHECK_THROWS_AS(normalize_points(pts, 0, 100), InvalidParameter);
}

TEST_CASE("sd_ar and l2_between_centroids") {
    const std::vector<Point2> same{{0.3, 0.3}, {0.3, 0.3}, {0.3, 0.3}};
    CHECK(sd_ar(same) < 1e-12);
    const std::vector<Point2> pair{{0, 0}, {1, 0}};
    CHECK(sd_ar(pair) == doctest::Approx(0.5));
    CHECK_THROWS_AS(sd_ar(std::vector<Point2>{{0, 0}}), InvalidParameter);

    CHECK(l2_between_centroids(pair, pair) == 0);
    const std::vector<Point2> o{{0, 0}}, p{{0.3, 0.4}};
    CHECK(l2_between_centroids(o, p) == doctest::Approx(0.5));
    CHECK_THROWS_AS(l2_between_centroids(o, std::vector<Point2>{}), InvalidParameter);
}

TEST_CASE("sd_ar and l2 are translation invariant") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.2, 0.6), t(-0.2, 0.2);
    for (int i = 0; i < 50; ++i) {
        std::vector<Point2> a(6), b(4);
        for (auto& q : a) q = {u(rng), u(rng)};
        for (auto& q : b) q = {u(rng), u(rng)};
        const Point2 shift{t(rng), t(rng)};
        auto a2 = a, b2 = b;
        for (auto& q : a2) q = q + shift;
        for (auto& q : b2) q = q + shift;
        CHECK(sd_ar(a2) == doctest::Approx(sd_ar(a)));
        CHECK(l2_between_centroids(a2, b2) == doctest::Approx(l2_between_centroids(a, b)));
    }
}

TEST_CASE("line metrics") {
    const Segment a{{0, 0}, {10, 0}}, b{{0, 10}, {10, 10}};
    CHECK(hd_lines(a, a) == 0);
    CHECK(hd_lines(a, b) == doctest::Approx(10));
    CHECK(hd_lines(a, b) == hd_lines(b, a));

    const Segment d10{{0, 0}, Angle{10}.unit()}, d190{{0, 0}, Angle{190}.unit()};
    CHECK(angular_deviation(d10, d190) < 1e-9);
    CHECK(angular_deviation(a, a) == 0);
    CHECK(angular_deviation(a, {{0, 0}, {0, 5}}) == doctest::Approx(90));
    CHECK(angular_deviation(d10, a) == doctest::Approx(angular_deviation(a, d10)));
    CHECK_THROWS_AS(angular_deviation(a, {{1, 1}, {1, 1}}), DegenerateGeometry);

    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(-50, 50);
    for (int i = 0; i < 200; ++i) {
        const Segment s{{u(rng), u(rng)}, {u(rng), u(rng)}}, t{{u(rng), u(rng)}, {u(rng), u(rng)}};
        const double ad = angular_deviation(s, t);
        CHECK((ad >= 0 && ad <= 90));
    }
}

TEST_CASE("diagonal endpoints give the worst-case Hausdorff distance") {
    for (auto [w, h] : {std::pair{800, 600}, {1024, 768}, {640, 480}, {1920, 1080}, {333, 777}}) {
        const std::vector<Point2> tl{{0, 0}}, br{{double(w), double(h)}};
        CHECK(std::abs(hausdorff(tl, br) - std::sqrt(double(w) * w + double(h) * h)) < 1e-6);
    }
}

TEST_CASE("evaluate against the result itself is all zero") {
    auto r = one_region(640, 480, {300, 200}, 12);
    CHECK(all_zero(evaluate(annotations_from_result(r, 3, 4), r)));

    // several regions and lines
    r.action_regions.push_back(r.action_regions[0]);
    r.action_regions[1].centroid = {500, 100};
    r.action_lines = action_lines(r.action_regions, *r.global_slope);
    CHECK(all_zero(evaluate(annotations_from_result(r, 2, 2), r)));
}

TEST_CASE("evaluate: hand-computed three-annotator set") {
    // 200 x 100 image, ICC region at (100, 50) = (0.5, 0.5), horizontal AL
    const auto r = one_region(200, 100, {100, 50}, 0);
    AnnotationSet set{"img", {}};
    set.annotators.push_back(annotator("e1", true, {{0.4, 0.5}}, {{{0, 0.6}, {1, 0.6}}}));
    set.annotators.push_back(annotator("e2", true, {{0.6, 0.5}}, {{{0, 0.5}, {1, 0.5}}}));
    set.annotators.push_back(annotator("n1", false, {{0.5, 0.8}}, {{{0.5, 0}, {0.5, 1}}}));
    const auto m = evaluate(set, r, 1.0);

    REQUIRE(m.sd_ar_expert);
    CHECK(*m.sd_ar_expert == doctest::Approx(0.1));   // x variance 0.01, y 0
    CHECK_FALSE(m.sd_ar_nonexpert);                    // one point only
    CHECK(*m.l2_e_icc == doctest::Approx(0.0));        // expert mean (0.5, 0.5)
    CHECK(*m.l2_ne_icc == doctest::Approx(0.3));
    CHECK(*m.l2_e_ne == doctest::Approx(0.3));
    // HD in pixels: e1 is 10 px below the 199 px wide ICC line, e2 sits on it
    // but runs to x = 200; n1 is vertical at x = 100, farthest from (0, 50)
    // and (199, 50): 100 then 99 -> HD 100 (its ends at y=0/100 are 50 away).
    const double e1 = std::hypot(1.0, 10.0);
    const double e2 = 1.0;
    const double n1 = 100.0;
    CHECK(*m.hd_all_icc == doctest::Approx((e1 + e2 + n1) / 3));
    CHECK(*m.ad_all_icc == doctest::Approx(30));
}

TEST_CASE("evaluate: absent groups and mismatched ids") {
    const auto r = one_region(100, 100, {50, 50}, 0);
    AnnotationSet only_novices{"img", {annotator("n1", false, {{0.5, 0.5}}), annotator("n2", false, {{0.5, 0.6}})}};
    const auto m = evaluate(only_novices, r);
    CHECK_FALSE(m.sd_ar_expert);
    CHECK_FALSE(m.l2_e_icc);
    CHECK_FALSE(m.l2_e_ne);
    CHECK(m.sd_ar_nonexpert);
    CHECK_FALSE(m.hd_all_icc);

    AnnotationSet other{"other", {}};
    CHECK_THROWS_AS(evaluate(other, r), InvalidParameter);
}

TEST_CASE("evaluate is invariant under annotator relabelling") {
    const auto r = one_region(300, 200, {120, 80}, -20);
    AnnotationSet set{"img", {}};
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 8; ++i)
        set.annotators.push_back(annotator("a" + std::to_string(i), i % 2 == 0, {{u(rng), u(rng)}},
                                           {{{u(rng), u(rng)}, {u(rng), u(rng)}}}));
    const auto base = evaluate(set, r);
    auto shuffled = set;
    std::shuffle(shuffled.annotators.begin(), shuffled.annotators.end(), rng);
    for (std::size_t i = 0; i < shuffled.annotators.size(); ++i) shuffled.annotators[i].annotator_id = "z" + std::to_string(i);
    const auto again = evaluate(shuffled, r);
    CHECK(*again.sd_ar_expert == doctest::Approx(*base.sd_ar_expert));
    CHECK(*again.l2_e_ne == doctest::Approx(*base.l2_e_ne));
    CHECK(*again.hd_all_icc == doctest::Approx(*base.hd_all_icc));
    CHECK(*again.ad_all_icc == doctest::Approx(*base.ad_all_icc));
}

TEST_CASE("annotation files round-trip and are validated") {
    AnnotationSet set{"img", {annotator("e1", true, {{0.25, 0.5}}, {{{0, 0.1}, {1, 0.2}}})}};
    set.annotators[0].pose_lines = {{{0.1, 0.1}, {0.1, 0.9}}};
    const auto doc = serialize_annotations(set);
    const auto back = parse_annotations(doc);
    CHECK(serialize_annotations(back) == doc);
    CHECK(back.annotators[0].expert);
    CHECK(back.annotators[0].pose_lines.size() == 1);

    CHECK_THROWS_AS(parse_annotations("not json"), ParseError);
    CHECK_THROWS_AS(parse_annotations(R"({"image_id":"x","annotators":[{"annotator_id":"a"}]})"), SchemaError);
    CHECK_THROWS_AS(parse_annotations(R"({"image_id":"x","annotators":[{"annotator_id":"a","expert":true,"action_regions":[[1.5,0]]}]})"),
                    SchemaError);
}

TEST_CASE("format_report lays out the table and marks absent values") {
    MetricsReport m;
    m.sd_ar_expert = 0.054;
    m.sd_ar_nonexpert = 0.089;
    m.l2_e_icc = 0.187;
    m.hd_all_icc = 664.35;
    const auto text = format_report(m);
    CHECK(text.find("SD_AR") != std::string::npos);
    CHECK(text.find("ALL/ICC") != std::string::npos);
    CHECK(text.find("0.054") != std::string::npos);
    CHECK(text.find("664.35") != std::string::npos);
    CHECK(text.find(" - ") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

}  // TEST_SUITE
