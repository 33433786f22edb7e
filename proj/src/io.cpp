#include "tileforge/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tf {

using nlohmann::json;

namespace {

json triple(const ExactAngle& a)
{
    auto t = a.triple();
    return json::array({t[0], t[1], t[2]});
}

ExactAngle angle_of(const json& j)
{
    if (!j.is_array() || j.size() != 3)
        throw Error("PARSE_ERROR", "exact angle must be [q0, q1, q2]");
    std::array<std::string, 3> t;
    for (size_t i = 0; i < 3; ++i)
        t[i] = j[i].is_string() ? j[i].get<std::string>() : j[i].dump();
    return ExactAngle::from_triple(t);
}

json polygon_json(const LabeledPolygon& p)
{
    json v = json::array(), a = json::array();
    for (Vec q : p.vertices)
        v.push_back({round12(q.x), round12(q.y)});
    for (const auto& x : p.angles)
        a.push_back(triple(x));
    json j{{"vertices", v}, {"anglesExact", a}};
    if (p.dir0)
        j["dir0Exact"] = triple(*p.dir0);
    return j;
}

LabeledPolygon polygon_of(const json& j, const std::string& label)
{
    std::vector<Vec> v;
    for (const auto& q : j.at("vertices"))
        v.push_back({q.at(0).get<double>(), q.at(1).get<double>()});
    std::vector<ExactAngle> a;
    for (const auto& x : j.at("anglesExact"))
        a.push_back(angle_of(x));
    std::optional<ExactAngle> d;
    if (j.contains("dir0Exact"))
        d = angle_of(j["dir0Exact"]);
    return make_polygon(std::move(v), std::move(a), label, d);
}

std::string fmt6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000")
        s = "0.000000";
    return s;
}

// XML-safe tile id
std::string escape(const std::string& s)
{
    std::string o;
    for (char c : s) {
        switch (c) {
        case '&': o += "&amp;"; break;
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '"': o += "&quot;"; break;
        default: o += c;
        }
    }
    return o;
}

} // namespace

double round12(double v)
{
    if (v == 0 || !std::isfinite(v))
        return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    double r = std::strtod(buf, nullptr);
    return r == 0 ? 0.0 : r;
}

std::string to_json(const PatchFile& f, int indent)
{
    json protos = json::array();
    for (const auto& t : f.tileset.tiles) {
        json p = polygon_json(t.shape);
        p["id"] = t.id;
        p["mayReflect"] = t.mayReflect;
        protos.push_back(std::move(p));
    }
    json pls = json::array();
    for (const auto& p : f.patch.placements)
        pls.push_back({{"tile", p.tile},
                       {"mirrored", p.iso.mirrored},
                       {"rotationExact", triple(p.iso.rotation)},
                       {"tx", round12(p.iso.translation.x)},
                       {"ty", round12(p.iso.translation.y)}});
    json j{{"tileset", f.tileset.name}, {"prototiles", protos}, {"placements", pls}};
    if (f.lattice)
        j["lattice"] = {{round12(f.lattice->first.x), round12(f.lattice->first.y)},
                        {round12(f.lattice->second.x), round12(f.lattice->second.y)}};
    return j.dump(indent) + "\n";
}

PatchFile patch_from_json(const std::string& text)
{
    PatchFile f;
    try {
        json j = json::parse(text);
        f.tileset.name = j.value("tileset", std::string{});
        if (j.contains("prototiles"))
            for (const auto& p : j["prototiles"]) {
                Prototile t;
                t.id = p.at("id").get<std::string>();
                t.mayReflect = p.value("mayReflect", false);
                t.shape = polygon_of(p, t.id);
                f.tileset.tiles.push_back(std::move(t));
            }
        for (const auto& p : j.at("placements")) {
            Placement pl;
            pl.tile = p.at("tile").get<std::string>();
            pl.iso.mirrored = p.value("mirrored", false);
            pl.iso.rotation = angle_of(p.at("rotationExact"));
            pl.iso.translation = {p.at("tx").get<double>(), p.at("ty").get<double>()};
            f.patch.placements.push_back(std::move(pl));
        }
        if (j.contains("lattice")) {
            const auto& l = j["lattice"];
            f.lattice = std::make_pair(Vec{l.at(0).at(0).get<double>(), l.at(0).at(1).get<double>()},
                                       Vec{l.at(1).at(0).get<double>(), l.at(1).at(1).get<double>()});
        }
    } catch (const json::exception& e) {
        throw Error("PARSE_ERROR", e.what());
    }
    return f;
}

PatchFile load_patch_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("IO_ERROR", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return patch_from_json(ss.str());
}

void save_patch_file(const std::string& path, const PatchFile& f)
{
    std::ofstream out(path);
    if (!out)
        throw Error("IO_ERROR", "cannot write " + path);
    out << to_json(f);
}

std::string render_svg(const TileSet& ts, const Patch& p, const RenderStyle& style)
{
    ValidationReport rep = [&] {
        try {
            return validate_patch(ts, p);
        } catch (const Error& e) {
            throw Error("INVALID_PATCH", e.what());
        }
    }();
    if (!rep.ok)
        throw Error("INVALID_PATCH", "patch does not validate");

    static const char* palette[] = {"#f4d35e", "#8ecae6", "#f28482", "#a7c957", "#cdb4db", "#ffb703", "#90be6d"};
    std::vector<LabeledPolygon> polys;
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool first = true;
    for (const auto& pl : p.placements) {
        polys.push_back(placed_shape(ts, pl));
        for (Vec v : polys.back().vertices) {
            if (first) {
                x0 = x1 = v.x;
                y0 = y1 = v.y;
                first = false;
            }
            x0 = std::min(x0, v.x);
            x1 = std::max(x1, v.x);
            y0 = std::min(y0, v.y);
            y1 = std::max(y1, v.y);
        }
    }
    const double s = style.scale, m = 0.5;
    const double w = (x1 - x0 + 2 * m) * s, h = (y1 - y0 + 2 * m) * s;
    // y grows downward in SVG
    auto X = [&](double x) { return fmt6((x - x0 + m) * s); };
    auto Y = [&](double y) { return fmt6((y1 - y + m) * s); };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt6(w) << "\" height=\""
      << fmt6(h) << "\" viewBox=\"0 0 " << fmt6(w) << " " << fmt6(h) << "\">\n";
    for (size_t i = 0; i < polys.size(); ++i) {
        const auto& pl = p.placements[i];
        std::string fill;
        if (auto it = style.fill.find(pl.tile); it != style.fill.end())
            fill = it->second;
        else
            fill = palette[std::max(0, ts.index_of(pl.tile)) % 7];
        o << "<path data-tile=\"" << escape(pl.tile) << "\"" << (pl.iso.mirrored ? " data-mirrored=\"true\"" : "")
          << " fill=\"" << fill << "\" stroke=\"#000000\" stroke-width=\"" << fmt6(style.strokeWidth * s)
          << "\" d=\"";
        const auto& v = polys[i].vertices;
        for (size_t k = 0; k < v.size(); ++k)
            o << (k ? " L " : "M ") << X(v[k].x) << " " << Y(v[k].y);
        o << " Z\"/>\n";
    }
    if (style.markMirrored)
        for (size_t i = 0; i < polys.size(); ++i) {
            if (!p.placements[i].iso.mirrored)
                continue;
            Vec c = polys[i].centroid();
            o << "<text x=\"" << X(c.x) << "\" y=\"" << Y(c.y) << "\" font-size=\"" << fmt6(0.5 * s)
              << "\" text-anchor=\"middle\" dominant-baseline=\"central\">*</text>\n";
        }
    o << "</svg>\n";
    return o.str();
}

} // namespace tf
