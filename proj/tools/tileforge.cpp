// tileforge command-line front end.

#include "tileforge/classify.hpp"
#include "tileforge/divide.hpp"
#include "tileforge/io.hpp"
#include "tileforge/search.hpp"
#include "tileforge/tile11.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace tf;
using nlohmann::json;

namespace {

constexpr int kUsage = 2, kInvalid = 3, kResource = 4;

struct MethodOpts {
    std::string method;
    std::string alpha, beta, gamma, delta, epsilon, zeta = "120";
    std::string t, u;
};

struct Common {
    bool json = false;
    bool allowReflection = false;
    int radius = 1;
    long maxPlacements = SearchPolicy{}.maxPlacements;
    std::string seedOrder;
    std::string out, render;
};

ExactAngle parse_angle(const std::string& s)
{
    if (s == "gamma*" || s == "g*")
        return gamma_star();
    if (s == "eps*" || s == "epsilon*")
        return epsilon_star();
    return ExactAngle::parse(s);
}

// "0.6" or "3:2" (X6Q : QX5)
double parse_ratio(const std::string& s)
{
    if (auto c = s.find(':'); c != std::string::npos) {
        double a = std::stod(s.substr(0, c)), b = std::stod(s.substr(c + 1));
        return a / (a + b);
    }
    return std::stod(s);
}

void add_method(CLI::App* app, MethodOpts& m, bool required = true)
{
    auto* o = app->add_option("--method", m.method, "M1, M2, M3, M4, D or D6");
    if (required)
        o->required();
    app->add_option("--alpha", m.alpha, "M1 angle");
    app->add_option("--beta", m.beta, "M2 angle");
    app->add_option("--gamma", m.gamma, "M4 angle (gamma* for the special value)");
    app->add_option("--delta", m.delta, "D angle");
    app->add_option("--epsilon", m.epsilon, "D angle (eps* for the special value)");
    app->add_option("--t", m.t, "M3 ratio X6Q/X5X6, or X6Q:QX5");
    app->add_option("--u", m.u, "D6 ratio");
    app->add_option("--zeta", m.zeta, "D6 angle");
}

DivisionSpec spec_of(const MethodOpts& m)
{
    auto need = [](const std::string& v, const char* name) {
        if (v.empty())
            throw CLI::ValidationError(std::string("--") + name, "required for this method");
        return v;
    };
    switch (parse_method(m.method)) {
    case Method::M1: return DivisionSpec::m1(parse_angle(need(m.alpha, "alpha")));
    case Method::M2: return DivisionSpec::m2(parse_angle(need(m.beta, "beta")));
    case Method::M3: return DivisionSpec::m3(parse_ratio(need(m.t, "t")));
    case Method::M4: return DivisionSpec::m4(parse_angle(need(m.gamma, "gamma")));
    case Method::D:
        return DivisionSpec::d(parse_angle(need(m.delta, "delta")), parse_angle(need(m.epsilon, "epsilon")));
    case Method::D6: return DivisionSpec::d6(parse_ratio(need(m.u, "u")), parse_angle(m.zeta));
    }
    throw Error("OUT_OF_DOMAIN", "unknown method");
}

void add_common(CLI::App* app, Common& c, bool search)
{
    app->add_flag("--json", c.json, "machine-readable output");
    if (search) {
        app->add_flag("--allow-reflection", c.allowReflection, "permit mirrored placements");
        app->add_option("--radius", c.radius, "corona radius");
        app->add_option("--max-placements", c.maxPlacements, "placement bound per search");
        app->add_option("--seed-order", c.seedOrder, "comma-separated prototile ids tried first");
    }
}

std::vector<std::string> split(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string x; std::getline(ss, x, ',');)
        if (!x.empty())
            out.push_back(x);
    return out;
}

SearchPolicy policy_of(const Common& c)
{
    SearchPolicy p;
    p.allowReflection = c.allowReflection;
    p.maxRadius = c.radius;
    p.maxPlacements = c.maxPlacements;
    p.seedOrder = split(c.seedOrder);
    return p;
}

TileSet reflect_all(TileSet ts, bool on)
{
    if (on)
        for (auto& t : ts.tiles)
            t.mayReflect = true;
    return ts;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw Error("IO_ERROR", "cannot write " + path);
    out << text;
}

void emit_files(const Common& c, const PatchFile& f)
{
    if (!c.out.empty())
        save_patch_file(c.out, f);
    if (!c.render.empty())
        write_text(c.render, render_svg(f.tileset, f.patch));
}

json angle_json(const ExactAngle& a)
{
    auto t = a.triple();
    return {{"exact", {t[0], t[1], t[2]}}, {"degrees", round12(a.numeric())}, {"text", a.str()}};
}

json report_json(const CoronaReport& r)
{
    json j{{"status", to_string(r.status)},
           {"completions", r.completions},
           {"placements", r.expansions},
           {"radius", r.radius},
           {"seconds", round12(r.elapsed)},
           {"note", r.note}};
    if (r.lattice)
        j["lattice"] = {{round12(r.lattice->first.x), round12(r.lattice->first.y)},
                        {round12(r.lattice->second.x), round12(r.lattice->second.y)}};
    if (r.unit)
        j["unitTiles"] = r.unit->size();
    return j;
}

int report_exit(const CoronaReport& r)
{
    return r.status == CoronaStatus::Inconclusive && r.note.find("bound") != std::string::npos ? kResource : 0;
}

void print_report(const Common& c, const std::string& what, const CoronaReport& r)
{
    if (c.json) {
        json j = report_json(r);
        j["case"] = what;
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << what << ": " << to_string(r.status) << "\n"
              << "  " << r.note << "\n"
              << "  completions " << r.completions << ", placements " << r.expansions << ", " << r.elapsed
              << " s\n";
    if (r.lattice)
        std::cout << "  lattice (" << r.lattice->first.x << ", " << r.lattice->first.y << ") ("
                  << r.lattice->second.x << ", " << r.lattice->second.y << ")\n";
}

void witness_files(const Common& c, const CoronaReport& r)
{
    const Patch* p = r.unit ? &*r.unit : r.witness ? &*r.witness : nullptr;
    if (!p)
        return;
    PatchFile f{r.unitTiles, *p, r.lattice};
    emit_files(c, f);
}

int exit_for(const Error& e)
{
    const std::string& c = e.code();
    if (c == "RESOURCE_LIMIT" || c == "EXPLOSION")
        return kResource;
    if (c == "USAGE" || c == "PARSE" || c == "OUT_OF_DOMAIN" || c == "UNKNOWN_FIGURE" || c == "UNKNOWN_TILE" || c == "PARSE_ERROR" ||
        c == "IO_ERROR")
        return kUsage;
    return kInvalid;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"tileforge: divisions of Tile(1,1), tile classification and bounded tiling search"};
    app.require_subcommand(1);
    int code = 0;

    // construct
    Common cConstruct;
    auto* construct = app.add_subcommand("construct", "build Tile(1,1) and print its vertices");
    add_common(construct, cConstruct, false);
    construct->add_option("--out", cConstruct.out, "patch file with the single tile");
    construct->add_option("--render", cConstruct.render, "SVG file");
    construct->callback([&] {
        const Tile11& t = construct_tile11();
        // walk the 14 unit edges from X1
        Vec end = t.X(1);
        for (int k = 1; k <= 14; ++k)
            end = end + unit_dir(t.edge_dir(k).numeric());
        Real closure = dist(end, t.X(1));
        if (cConstruct.json) {
            json v = json::array();
            for (int k = 1; k <= 14; ++k)
                v.push_back({{"label", t.vertexLabels[k - 1]},
                             {"x", round12(t.X(k).x)},
                             {"y", round12(t.X(k).y)},
                             {"angle", angle_json(t.angle(k))}});
            std::cout << json{{"vertices", v}, {"area", round12(area(t.shape))}, {"closure", closure}}.dump(2)
                      << "\n";
        } else {
            for (int k = 1; k <= 14; ++k)
                std::cout << t.vertexLabels[k - 1] << "  " << t.X(k).x << " " << t.X(k).y << "  "
                          << t.angle(k).str() << "\n";
            std::cout << "area " << area(t.shape) << ", closure error " << closure << "\n";
        }
        Patch p;
        p.placements.push_back({kTile11Id, Isometry{}});
        emit_files(cConstruct, {tile11_tileset(), p, std::nullopt});
    });

    // divide
    MethodOpts mDivide;
    Common cDivide;
    bool census = false;
    auto* dividec = app.add_subcommand("divide", "divide Tile(1,1) into five convex pieces");
    add_method(dividec, mDivide);
    add_common(dividec, cDivide, false);
    dividec->add_flag("--census", census, "print the n, m tally only");
    dividec->add_option("--out", cDivide.out, "pieces and assembly as a patch file");
    dividec->add_option("--render", cDivide.render, "SVG of the assembly");
    dividec->callback([&] {
        DivisionResult r = divide(spec_of(mDivide));
        if (cDivide.json) {
            json pieces = json::array();
            for (size_t i = 0; i < r.pieces.size(); ++i) {
                json a = json::array();
                for (const auto& x : r.pieces[i].angles)
                    a.push_back(x.str());
                pieces.push_back({{"label", r.pieces[i].label},
                                  {"tile", r.pieceTile[i]},
                                  {"edges", r.pieces[i].size()},
                                  {"area", round12(area(r.pieces[i]))},
                                  {"angles", a}});
            }
            std::cout << json{{"division", r.spec.name()},
                              {"census", r.census.summary()},
                              {"n", r.census.n},
                              {"m", r.census.m},
                              {"pieces", pieces}}
                             .dump(2)
                      << "\n";
        } else if (census) {
            std::cout << r.census.summary() << "\n";
        } else {
            std::cout << r.spec.name() << ": " << r.census.summary() << "\n";
            for (size_t i = 0; i < r.pieces.size(); ++i) {
                std::cout << "  " << r.pieces[i].label << " (" << r.pieceTile[i] << ") " << r.pieces[i].size()
                          << " edges, angles";
                for (const auto& x : r.pieces[i].angles)
                    std::cout << " " << x.str();
                std::cout << "\n";
            }
        }
        emit_files(cDivide, {r.tileset, r.assembly, std::nullopt});
    });

    // classify
    MethodOpts mClassify;
    Common cClassify;
    std::string classifyFile;
    auto* classify = app.add_subcommand("classify", "monotile Type families of each prototile");
    classify->add_option("file", classifyFile, "patch or pieces file");
    add_method(classify, mClassify, false);
    add_common(classify, cClassify, false);
    classify->callback([&] {
        TileSet ts;
        if (!classifyFile.empty())
            ts = load_patch_file(classifyFile).tileset;
        else if (!mClassify.method.empty())
            ts = divide(spec_of(mClassify)).tileset;
        else
            throw CLI::ValidationError("classify", "give a file or --method");
        json rows = json::array();
        for (const auto& t : ts.tiles) {
            TypeVerdict v = classify_polygon(t.shape);
            if (cClassify.json)
                rows.push_back({{"tile", t.id},
                                {"edges", t.shape.size()},
                                {"families", v.families},
                                {"reflectionFree", v.reflectionFree}});
            else
                std::cout << t.id << "  " << t.shape.size() << " edges  " << v.str()
                          << (v.reflectionFree ? "  (tiles without reflection)" : "") << "\n";
        }
        if (cClassify.json)
            std::cout << rows.dump(2) << "\n";
    });

    // stars
    MethodOpts mStars;
    Common cStars;
    std::string anchor;
    auto* stars = app.add_subcommand("stars", "vertex stars realizable by the pieces");
    add_method(stars, mStars);
    add_common(stars, cStars, true);
    stars->add_option("--anchor", anchor, "TILE:corner, e.g. P1:3");
    stars->callback([&] {
        DivisionResult r = divide(spec_of(mStars));
        SearchPolicy pol = policy_of(cStars);
        std::optional<std::pair<std::string, int>> a;
        if (!anchor.empty()) {
            auto c = anchor.rfind(':');
            if (c == std::string::npos)
                throw CLI::ValidationError("--anchor", "expected TILE:corner");
            a = std::make_pair(anchor.substr(0, c), std::stoi(anchor.substr(c + 1)));
        }
        auto list = enumerate_vertex_stars(reflect_all(r.tileset, cStars.allowReflection), pol, a);
        if (cStars.json) {
            json j = json::array();
            for (const auto& s : list)
                j.push_back(s.str());
            std::cout << json{{"division", r.spec.name()}, {"stars", j}}.dump(2) << "\n";
        } else {
            std::cout << list.size() << " stars\n";
            for (const auto& s : list)
                std::cout << "  " << s.str() << "\n";
        }
    });

    // grow
    MethodOpts mGrow;
    Common cGrow;
    int growTiles = 20;
    auto* grow = app.add_subcommand("grow", "grow a one-sided patch by search");
    add_method(grow, mGrow, false);
    add_common(grow, cGrow, true);
    grow->add_option("--tiles", growTiles, "minimum placements");
    grow->add_option("--out", cGrow.out, "patch file");
    grow->add_option("--render", cGrow.render, "SVG file");
    grow->callback([&] {
        TileSet ts = mGrow.method.empty() ? tile11_tileset() : divide(spec_of(mGrow)).tileset;
        ts = reflect_all(ts, cGrow.allowReflection);
        Patch p = grow_patch(ts, growTiles, policy_of(cGrow));
        ValidationReport v = validate_patch(ts, p);
        if (cGrow.json)
            std::cout << json{{"tiles", p.size()}, {"valid", v.ok}, {"edgeToEdge", v.edgeToEdge}}.dump(2) << "\n";
        else
            std::cout << p.size() << " tiles, " << (v.ok ? "valid" : "INVALID")
                      << (v.edgeToEdge ? ", edge-to-edge" : ", not edge-to-edge") << "\n";
        emit_files(cGrow, {ts, p, std::nullopt});
    });

    // forced
    MethodOpts mForced;
    Common cForced;
    auto* forced = app.add_subcommand("forced", "check that bounded coronas force the Tile(1,1) clusters");
    add_method(forced, mForced);
    add_common(forced, cForced, true);
    forced->add_option("--out", cForced.out, "witness patch file");
    forced->add_option("--render", cForced.render, "witness SVG");
    forced->callback([&] {
        DivisionResult r = divide(spec_of(mForced));
        CoronaReport rep =
            check_forced_assembly(reflect_all(r.tileset, cForced.allowReflection), r, policy_of(cForced));
        print_report(cForced, r.spec.name(), rep);
        if (rep.unitTiles.tiles.empty())
            rep.unitTiles = r.tileset;
        witness_files(cForced, rep);
        code = report_exit(rep);
    });

    // subset
    MethodOpts mSubset;
    Common cSubset;
    std::string subsetTiles;
    auto* subsetc = app.add_subcommand("subset", "can a proper subset of the pieces tile?");
    add_method(subsetc, mSubset);
    add_common(subsetc, cSubset, true);
    subsetc->add_option("--tiles", subsetTiles, "comma-separated prototile ids")->required();
    subsetc->add_option("--out", cSubset.out, "translation unit patch file");
    subsetc->add_option("--render", cSubset.render, "translation unit SVG");
    subsetc->callback([&] {
        DivisionResult r = divide(spec_of(mSubset));
        auto ids = split(subsetTiles);
        TileSet ts = reflect_all(r.tileset.subset(ids), cSubset.allowReflection);
        CoronaReport rep = subset_tiling_probe(ts, ids, policy_of(cSubset));
        print_report(cSubset, r.spec.name() + " {" + subsetTiles + "}", rep);
        witness_files(cSubset, rep);
        code = report_exit(rep);
    });

    // subdivide
    MethodOpts mSub;
    Common cSub;
    std::string subFile;
    auto* subdiv = app.add_subcommand("subdivide", "replace every Tile(1,1) of a patch by its five pieces");
    subdiv->add_option("file", subFile, "Tile(1,1) patch file")->required();
    add_method(subdiv, mSub);
    add_common(subdiv, cSub, false);
    subdiv->add_option("--out", cSub.out, "patch file");
    subdiv->add_option("--render", cSub.render, "SVG file");
    subdiv->callback([&] {
        PatchFile in = load_patch_file(subFile);
        DivisionResult r = divide(spec_of(mSub));
        Patch p = subdivide_patch(in.patch, r);
        ValidationReport v = validate_patch(r.tileset, p);
        if (cSub.json)
            std::cout << json{{"tiles", p.size()}, {"valid", v.ok}, {"edgeToEdge", v.edgeToEdge}}.dump(2) << "\n";
        else
            std::cout << in.patch.size() << " tiles -> " << p.size() << " pieces, " << (v.ok ? "valid" : "INVALID")
                      << (v.edgeToEdge ? ", edge-to-edge" : ", not edge-to-edge") << "\n";
        if (!v.ok)
            code = kInvalid;
        emit_files(cSub, {r.tileset, p, std::nullopt});
    });

    // fixture
    Common cFix;
    std::string fixId;
    bool fixList = false;
    auto* fix = app.add_subcommand("fixture", "named figure patches");
    fix->add_option("id", fixId, "fixture id");
    fix->add_flag("--list", fixList, "list fixture ids");
    add_common(fix, cFix, false);
    fix->add_option("--out", cFix.out, "patch file");
    fix->add_option("--render", cFix.render, "SVG file");
    fix->callback([&] {
        if (fixList || fixId.empty()) {
            for (const auto& id : fixture_ids())
                std::cout << id << "  " << fixture(id).caption << "\n";
            return;
        }
        const Fixture& f = fixture(fixId);
        ValidationReport v = validate_patch(f.tileset, f.patch);
        bool periodic = f.lattice && verify_periodic(f.tileset, f.patch, f.lattice->first, f.lattice->second);
        if (cFix.json)
            std::cout << json{{"id", f.id}, {"caption", f.caption}, {"tiles", f.patch.size()}, {"valid", v.ok},
                              {"periodic", periodic}}
                             .dump(2)
                      << "\n";
        else
            std::cout << f.id << ": " << f.caption << "\n  " << f.patch.size() << " tiles, "
                      << (v.ok ? "valid" : "INVALID") << (periodic ? ", translation unit verified" : "") << "\n";
        emit_files(cFix, {f.tileset, f.patch, f.lattice});
    });

    // verify
    Common cVerify;
    std::string verifyFile;
    std::vector<double> v1, v2;
    auto* verify = app.add_subcommand("verify", "validate a patch file and its lattice if present");
    verify->add_option("file", verifyFile, "patch file")->required();
    verify->add_option("--v1", v1, "first lattice vector")->expected(2);
    verify->add_option("--v2", v2, "second lattice vector")->expected(2);
    add_common(verify, cVerify, false);
    verify->callback([&] {
        PatchFile f = load_patch_file(verifyFile);
        if (v1.size() == 2 && v2.size() == 2)
            f.lattice = std::make_pair(Vec{v1[0], v1[1]}, Vec{v2[0], v2[1]});
        ValidationReport v = validate_patch(f.tileset, f.patch);
        std::optional<bool> periodic;
        if (f.lattice)
            periodic = verify_periodic(f.tileset, f.patch, f.lattice->first, f.lattice->second);
        if (cVerify.json) {
            json j{{"valid", v.ok},        {"edgeToEdge", v.edgeToEdge}, {"overlaps", v.overlaps},
                   {"gaps", v.gaps},       {"badStars", v.badStars},     {"tiles", f.patch.size()}};
            if (periodic)
                j["periodic"] = *periodic;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << f.patch.size() << " tiles, " << (v.ok ? "valid" : "INVALID")
                      << (v.edgeToEdge ? ", edge-to-edge" : ", not edge-to-edge") << "\n";
            for (const auto& s : v.overlaps)
                std::cout << "  overlap: " << s << "\n";
            for (const auto& s : v.gaps)
                std::cout << "  gap: " << s << "\n";
            for (const auto& s : v.badStars)
                std::cout << "  star: " << s << "\n";
            if (periodic)
                std::cout << (*periodic ? "  translation unit verified\n" : "  NOT a translation unit\n");
        }
        if (!v.ok || (periodic && !*periodic))
            code = kInvalid;
    });

    // render
    std::string renderIn, renderOut;
    auto* render = app.add_subcommand("render", "SVG of a patch file");
    render->add_option("file", renderIn, "patch file")->required();
    render->add_option("--out", renderOut, "SVG file (stdout if absent)");
    render->callback([&] {
        PatchFile f = load_patch_file(renderIn);
        std::string svg = render_svg(f.tileset, f.patch);
        if (renderOut.empty())
            std::cout << svg;
        else
            write_text(renderOut, svg);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : kUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return code;
}
