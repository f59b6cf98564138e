#include "icc/metrics.hpp"

#include "icc/error.hpp"
#include "json_util.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>

namespace icc {

namespace {

using nlohmann::json;

Point2 mean_of(std::span<const Point2> pts) {
    Point2 m;
    for (const auto& p : pts) m = m + p;
    return (1.0 / static_cast<double>(pts.size())) * m;
}

std::optional<double> mean_of(const std::vector<double>& values) {
    if (values.empty()) return std::nullopt;
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

Segment denormalize(const Segment& s, int width, int height) {
    return {{s.a.x * width, s.a.y * height}, {s.b.x * width, s.b.y * height}};
}

Segment normalize(const Segment& s, int width, int height) {
    return {{s.a.x / width, s.a.y / height}, {s.b.x / width, s.b.y / height}};
}

void check_dims(int width, int height) {
    if (width <= 0 || height <= 0) throw InvalidParameter("image dimensions must be positive");
}

Point2 unit_point(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError(where + ": expected [x, y]");
    const Point2 p{j[0].get<double>(), j[1].get<double>()};
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0))
        throw SchemaError(where + ": normalized coordinates must lie in [0, 1]");
    return p;
}

std::vector<Segment> unit_segments(const json& j, const char* key, const std::string& where) {
    std::vector<Segment> out;
    if (!j.contains(key)) return out;
    if (!j.at(key).is_array()) throw SchemaError(where + ": '" + key + "' must be an array");
    for (const auto& s : j.at(key)) {
        if (!s.is_array() || s.size() != 2) throw SchemaError(where + ": segments are [[x, y], [x, y]]");
        out.push_back({unit_point(s[0], where), unit_point(s[1], where)});
    }
    return out;
}

json point_json(Point2 p) { return json::array({detail::canonical(p.x), detail::canonical(p.y)}); }

json segments_json(const std::vector<Segment>& segs) {
    json arr = json::array();
    for (const auto& s : segs) arr.push_back({point_json(s.a), point_json(s.b)});
    return arr;
}

// Annotated AR points keyed by the ICC region they are closest to; a single
// cluster when the result has no regions.
using Clusters = std::map<std::size_t, std::vector<Point2>>;

Clusters cluster_by_region(const std::vector<Point2>& pts, const std::vector<Point2>& regions) {
    Clusters out;
    for (const auto& p : pts) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < regions.size(); ++i)
            if (distance(p, regions[i]) < distance(p, regions[best])) best = i;
        out[best].push_back(p);
    }
    return out;
}

std::optional<double> pooled_sd(const Clusters& clusters, std::size_t total) {
    if (total < 2) return std::nullopt;
    double ss = 0.0;
    for (const auto& [key, pts] : clusters) {
        const Point2 m = mean_of(pts);
        for (const auto& p : pts) ss += (p.x - m.x) * (p.x - m.x) + (p.y - m.y) * (p.y - m.y);
    }
    return std::sqrt(ss / static_cast<double>(total));
}

std::optional<double> l2_to_icc(const Clusters& clusters, const std::vector<Point2>& regions) {
    if (clusters.empty() || regions.empty()) return std::nullopt;
    double sum = 0.0, n = 0.0;
    for (const auto& [key, pts] : clusters) {
        sum += static_cast<double>(pts.size()) * distance(mean_of(pts), regions[key]);
        n += static_cast<double>(pts.size());
    }
    return sum / n;
}

// Each cluster is compared with the other group's cluster for the same
// region, or with its nearest cluster when the other group skipped it.
std::optional<double> l2_between_groups(const Clusters& a, const Clusters& b) {
    if (a.empty() || b.empty()) return std::nullopt;
    double sum = 0.0, n = 0.0;
    auto accumulate = [&](const Clusters& from, const Clusters& to) {
        for (const auto& [key, pts] : from) {
            const Point2 m = mean_of(pts);
            double d;
            if (auto it = to.find(key); it != to.end()) {
                d = distance(m, mean_of(it->second));
            } else {
                d = std::numeric_limits<double>::infinity();
                for (const auto& [other, other_pts] : to) d = std::min(d, distance(m, mean_of(other_pts)));
            }
            sum += static_cast<double>(pts.size()) * d;
            n += static_cast<double>(pts.size());
        }
    };
    accumulate(a, b);
    accumulate(b, a);
    return sum / n;
}

}  // namespace

std::vector<Point2> normalize_points(std::span<const Point2> pts, int width, int height) {
    check_dims(width, height);
    std::vector<Point2> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back({p.x / width, p.y / height});
    return out;
}

std::vector<Point2> denormalize_points(std::span<const Point2> pts, int width, int height) {
    check_dims(width, height);
    std::vector<Point2> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back({p.x * width, p.y * height});
    return out;
}

double sd_ar(std::span<const Point2> points) {
    if (points.size() < 2) throw InvalidParameter("sd_ar: needs at least two points");
    const Point2 m = mean_of(points);
    double vx = 0.0, vy = 0.0;
    for (const auto& p : points) {
        vx += (p.x - m.x) * (p.x - m.x);
        vy += (p.y - m.y) * (p.y - m.y);
    }
    const auto n = static_cast<double>(points.size());
    return std::sqrt(vx / n + vy / n);
}

double l2_between_centroids(std::span<const Point2> a, std::span<const Point2> b) {
    if (a.empty() || b.empty()) throw InvalidParameter("l2_between_centroids: empty group");
    return distance(mean_of(a), mean_of(b));
}

double hd_lines(const Segment& a, const Segment& b, double spacing) {
    const auto pa = sample_segment(a, spacing);
    const auto pb = sample_segment(b, spacing);
    return hausdorff(pa, pb);
}

double angular_deviation(const Segment& a, const Segment& b) {
    const Vec2 u = a.b - a.a;
    const Vec2 v = b.b - b.a;
    const double nu = norm(u), nv = norm(v);
    if (nu == 0.0 || nv == 0.0) throw DegenerateGeometry("angular_deviation: zero-length segment");
    // arccos |u.v| for unit vectors, in a form that stays accurate near 0
    return std::atan2(std::abs(cross(u, v)), std::abs(dot(u, v))) * 180.0 / std::numbers::pi;
}

MetricsReport evaluate(const AnnotationSet& annotations, const CompositionResult& result,
                       double spacing) {
    if (annotations.image_id != result.image_id)
        throw InvalidParameter("evaluate: annotation image '" + annotations.image_id +
                               "' does not match result image '" + result.image_id + "'");
    const int w = result.width, h = result.height;
    check_dims(w, h);

    std::vector<Point2> icc_pts;
    for (const auto& region : result.action_regions)
        icc_pts.push_back({region.centroid.x / w, region.centroid.y / h});
    std::vector<Point2> expert_pts, novice_pts;
    for (const auto& a : annotations.annotators) {
        auto& group = a.expert ? expert_pts : novice_pts;
        group.insert(group.end(), a.action_regions.begin(), a.action_regions.end());
    }
    const Clusters experts = cluster_by_region(expert_pts, icc_pts);
    const Clusters novices = cluster_by_region(novice_pts, icc_pts);

    MetricsReport report;
    report.sd_ar_expert = pooled_sd(experts, expert_pts.size());
    report.sd_ar_nonexpert = pooled_sd(novices, novice_pts.size());
    report.l2_e_icc = l2_to_icc(experts, icc_pts);
    report.l2_ne_icc = l2_to_icc(novices, icc_pts);
    report.l2_e_ne = l2_between_groups(experts, novices);

    std::vector<Segment> icc_lines;
    for (const auto& line : result.action_lines)
        if (auto seg = action_line_extent(line, w, h)) icc_lines.push_back(*seg);
    if (!icc_lines.empty()) {
        std::vector<double> hd_per_annotator, ad_per_annotator;
        for (const auto& a : annotations.annotators) {
            if (a.action_lines.empty()) continue;
            double hd_sum = 0.0, ad_sum = 0.0;
            for (const auto& unit_line : a.action_lines) {
                const Segment line = denormalize(unit_line, w, h);
                double best_hd = std::numeric_limits<double>::infinity();
                const Segment* match = nullptr;
                for (const auto& cand : icc_lines) {
                    const double d = hd_lines(line, cand, spacing);
                    if (d < best_hd) {
                        best_hd = d;
                        match = &cand;
                    }
                }
                hd_sum += best_hd;
                ad_sum += angular_deviation(line, *match);
            }
            const auto n = static_cast<double>(a.action_lines.size());
            hd_per_annotator.push_back(hd_sum / n);
            ad_per_annotator.push_back(ad_sum / n);
        }
        report.hd_all_icc = mean_of(hd_per_annotator);
        report.ad_all_icc = mean_of(ad_per_annotator);
    }
    return report;
}

AnnotationSet parse_annotations(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("annotation file: ") + e.what());
    }
    const std::string where = "annotation file";
    try {
        AnnotationSet set;
        set.image_id = detail::require<std::string>(doc, "image_id", where);
        if (!doc.contains("annotators") || !doc.at("annotators").is_array())
            throw SchemaError(where + ": 'annotators' must be an array");
        for (const auto& a : doc.at("annotators")) {
            Annotator ann;
            ann.annotator_id = detail::require<std::string>(a, "annotator_id", where);
            const std::string at = where + ": annotator '" + ann.annotator_id + "'";
            ann.expert = detail::require<bool>(a, "expert", at);
            if (a.contains("action_regions")) {
                if (!a.at("action_regions").is_array())
                    throw SchemaError(at + ": 'action_regions' must be an array");
                for (const auto& p : a.at("action_regions")) ann.action_regions.push_back(unit_point(p, at));
            }
            ann.action_lines = unit_segments(a, "action_lines", at);
            ann.pose_lines = unit_segments(a, "pose_lines", at);
            set.annotators.push_back(std::move(ann));
        }
        return set;
    } catch (const json::exception& e) {
        throw SchemaError(where + ": " + e.what());
    }
}

std::string serialize_annotations(const AnnotationSet& set) {
    json annotators = json::array();
    for (const auto& a : set.annotators) {
        json regions = json::array();
        for (const auto& p : a.action_regions) regions.push_back(point_json(p));
        annotators.push_back({{"annotator_id", a.annotator_id},
                              {"expert", a.expert},
                              {"action_regions", std::move(regions)},
                              {"action_lines", segments_json(a.action_lines)},
                              {"pose_lines", segments_json(a.pose_lines)}});
    }
    return json{{"image_id", set.image_id}, {"annotators", std::move(annotators)}}.dump(2) + "\n";
}

AnnotationSet annotations_from_result(const CompositionResult& result, int experts, int nonexperts) {
    const int w = result.width, h = result.height;
    check_dims(w, h);
    Annotator copy;
    for (const auto& region : result.action_regions)
        copy.action_regions.push_back({region.centroid.x / w, region.centroid.y / h});
    for (const auto& line : result.action_lines)
        if (auto seg = action_line_extent(line, w, h)) copy.action_lines.push_back(normalize(*seg, w, h));
    for (const auto& pl : result.pose_lines) copy.pose_lines.push_back(normalize(pl.line, w, h));

    AnnotationSet set{result.image_id, {}};
    for (int i = 0; i < experts + nonexperts; ++i) {
        Annotator a = copy;
        a.expert = i < experts;
        a.annotator_id = (a.expert ? "expert-" : "novice-") + std::to_string(i);
        set.annotators.push_back(std::move(a));
    }
    return set;
}

std::string format_report(const MetricsReport& r) {
    auto cell = [](const std::optional<double>& v, const char* fmt) {
        if (!v) return std::string("-");
        char buf[32];
        std::snprintf(buf, sizeof buf, fmt, *v);
        return std::string(buf);
    };
    char out[512];
    std::snprintf(out, sizeof out,
                  "%-9s %-9s | %-9s %-9s %-9s | %-9s | %-9s\n"
                  "%-9s %-9s | %-9s %-9s %-9s | %-9s | %-9s\n"
                  "%-9s %-9s | %-9s %-9s %-9s | %-9s | %-9s\n",
                  "SD_AR", "", "L2", "", "", "HD", "AD",  //
                  "E", "NE", "E/ICC", "NE/ICC", "E/NE", "ALL/ICC", "ALL/ICC",
                  cell(r.sd_ar_expert, "%.3f").c_str(), cell(r.sd_ar_nonexpert, "%.3f").c_str(),
                  cell(r.l2_e_icc, "%.3f").c_str(), cell(r.l2_ne_icc, "%.3f").c_str(),
                  cell(r.l2_e_ne, "%.3f").c_str(), cell(r.hd_all_icc, "%.2f").c_str(),
                  cell(r.ad_all_icc, "%.2f").c_str());
    return out;
}

}  // namespace icc
