#include "icc/canvas.hpp"

#include "icc/error.hpp"
#include "json_util.hpp"

namespace icc {

namespace {

using nlohmann::json;
using detail::canonical;
using detail::require;

constexpr const char* kFormat = "icc-result/1";

json point_json(Point2 p) { return json::array({canonical(p.x), canonical(p.y)}); }

Point2 point_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError(where + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

const json& array_at(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw SchemaError(where + ": '" + key + "' must be an array");
    return j.at(key);
}

}  // namespace

std::string serialize_result(const CompositionResult& r) {
    json doc;
    doc["format"] = kFormat;
    doc["image_id"] = r.image_id;
    doc["width"] = r.width;
    doc["height"] = r.height;

    json pose_lines = json::array();
    for (const auto& pl : r.pose_lines)
        pose_lines.push_back(
            {{"person_id", pl.person_id}, {"a", point_json(pl.line.a)}, {"b", point_json(pl.line.b)}});
    doc["pose_lines"] = std::move(pose_lines);

    json rays = json::array();
    for (const auto& ray : r.gaze_rays)
        rays.push_back({{"person_id", ray.person_id},
                        {"origin", point_json(ray.origin)},
                        {"direction", canonical(ray.direction.degrees)}});
    doc["gaze_rays"] = std::move(rays);

    json regions = json::array();
    for (const auto& region : r.action_regions) {
        json polys = json::array();
        for (const auto& poly : region.polygons) {
            json ring = json::array();
            for (const auto& v : poly.vertices()) ring.push_back(point_json(v));
            polys.push_back(std::move(ring));
        }
        json pairs = json::array();
        for (const auto& [a, b] : region.contributing_pairs) pairs.push_back({a, b});
        regions.push_back({{"centroid", point_json(region.centroid)},
                           {"area", canonical(region.area)},
                           {"polygons", std::move(polys)},
                           {"pairs", std::move(pairs)}});
    }
    doc["action_regions"] = std::move(regions);

    json lines = json::array();
    for (const auto& line : r.action_lines)
        lines.push_back({{"anchor", point_json(line.anchor)}, {"slope", canonical(line.slope.degrees)}});
    doc["action_lines"] = std::move(lines);

    doc["global_slope"] = r.global_slope ? json(canonical(r.global_slope->degrees)) : json(nullptr);

    if (r.fg_colors) {
        json shares = json::array();
        for (double s : r.fg_colors->shares) shares.push_back(canonical(s));
        json palette = json::array();
        for (const auto& c : r.fg_colors->palette)
            palette.push_back({canonical(c[0]), canonical(c[1]), canonical(c[2])});
        doc["fg_colors"] = {{"elected", r.fg_colors->elected},
                            {"dominant", r.fg_colors->dominant},
                            {"shares", std::move(shares)},
                            {"fallback", r.fg_colors->fallback},
                            {"palette", std::move(palette)}};
    } else {
        doc["fg_colors"] = nullptr;
    }
    doc["parameters"] = r.parameters;
    doc["notes"] = r.notes;
    return doc.dump(2) + "\n";
}

namespace {

CompositionResult result_from(const json& doc) {
    const std::string where = "result file";
    if (!doc.is_object()) throw SchemaError(where + ": expected an object");
    if (require<std::string>(doc, "format", where) != kFormat)
        throw SchemaError(where + ": unsupported format tag");

    CompositionResult r;
    r.image_id = require<std::string>(doc, "image_id", where);
    r.width = require<int>(doc, "width", where);
    r.height = require<int>(doc, "height", where);
    if (r.width <= 0 || r.height <= 0) throw SchemaError(where + ": dimensions must be positive");

    for (const auto& pl : array_at(doc, "pose_lines", where))
        r.pose_lines.push_back({require<int>(pl, "person_id", where),
                                {point_from(pl.at("a"), where), point_from(pl.at("b"), where)}});
    for (const auto& ray : array_at(doc, "gaze_rays", where))
        r.gaze_rays.push_back({point_from(ray.at("origin"), where),
                               Angle{require<double>(ray, "direction", where)},
                               require<int>(ray, "person_id", where)});
    for (const auto& reg : array_at(doc, "action_regions", where)) {
        ActionRegion region;
        region.centroid = point_from(reg.at("centroid"), where);
        region.area = require<double>(reg, "area", where);
        for (const auto& ring : array_at(reg, "polygons", where)) {
            std::vector<Point2> vertices;
            for (const auto& v : ring) vertices.push_back(point_from(v, where));
            try {
                region.polygons.emplace_back(std::move(vertices));
            } catch (const DegenerateGeometry& e) {
                throw SchemaError(where + ": invalid region polygon: " + e.what());
            }
        }
        for (const auto& pair : array_at(reg, "pairs", where)) {
            if (!pair.is_array() || pair.size() != 2) throw SchemaError(where + ": bad person pair");
            region.contributing_pairs.emplace_back(pair[0].get<int>(), pair[1].get<int>());
        }
        r.action_regions.push_back(std::move(region));
    }
    for (const auto& line : array_at(doc, "action_lines", where))
        r.action_lines.push_back(
            {point_from(line.at("anchor"), where), Angle{require<double>(line, "slope", where)}});

    if (doc.contains("global_slope") && !doc.at("global_slope").is_null())
        r.global_slope = Angle{require<double>(doc, "global_slope", where)};

    if (doc.contains("fg_colors") && !doc.at("fg_colors").is_null()) {
        const auto& fg = doc.at("fg_colors");
        FgSummary s;
        s.elected = require<std::vector<int>>(fg, "elected", where);
        s.dominant = require<int>(fg, "dominant", where);
        s.shares = require<std::vector<double>>(fg, "shares", where);
        s.fallback = require<bool>(fg, "fallback", where);
        for (const auto& c : require<std::vector<std::vector<double>>>(fg, "palette", where)) {
            if (c.size() != 3) throw SchemaError(where + ": palette entries need 3 channels");
            s.palette.push_back({c[0], c[1], c[2]});
        }
        r.fg_colors = std::move(s);
    }
    if (doc.contains("parameters")) {
        try {
            doc.at("parameters").get_to(r.parameters);
        } catch (const json::exception& e) {
            throw SchemaError(where + ": " + e.what());
        }
    }
    if (doc.contains("notes")) r.notes = require<std::vector<std::string>>(doc, "notes", where);
    return r;
}

}  // namespace

CompositionResult parse_result(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("result file: ") + e.what());
    }
    try {
        return result_from(doc);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("result file: ") + e.what());
    }
}

}  // namespace icc
