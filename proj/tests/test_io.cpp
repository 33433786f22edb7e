#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tileforge/divide.hpp"
#include "tileforge/io.hpp"
#include "tileforge/tile11.hpp"

#include <cmath>
#include <filesystem>
#include <regex>

using namespace tf;

namespace {

std::string code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

size_t count(const std::string& s, const std::string& needle)
{
    size_t n = 0;
    for (size_t at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1))
        ++n;
    return n;
}

} // namespace

TEST_CASE("round12")
{
    CHECK(round12(0.1 + 0.2) == 0.3);
    CHECK(round12(1.0 / 3) == 0.333333333333);
    CHECK(round12(0) == 0);
    CHECK(round12(-2.5) == -2.5);
}

TEST_CASE("patch files round-trip")
{
    for (const char* id : {"FIG2", "FIG7", "FIG9AD"}) {
        CAPTURE(id);
        const Fixture& fx = fixture(id);
        PatchFile f{fx.tileset, fx.patch, fx.lattice};
        std::string text = to_json(f);
        PatchFile g = patch_from_json(text);
        CHECK(to_json(g) == text);
        CHECK(g.tileset.name == id);
        REQUIRE(g.patch.size() == f.patch.size());
        REQUIRE(g.tileset.tiles.size() == f.tileset.tiles.size());
        for (size_t i = 0; i < f.tileset.tiles.size(); ++i) {
            CHECK(g.tileset.tiles[i].shape.angles == f.tileset.tiles[i].shape.angles);
            CHECK(g.tileset.tiles[i].mayReflect == f.tileset.tiles[i].mayReflect);
        }
        for (size_t i = 0; i < f.patch.size(); ++i) {
            const auto& a = f.patch.placements[i];
            const auto& b = g.patch.placements[i];
            CHECK(a.tile == b.tile);
            CHECK(a.iso.mirrored == b.iso.mirrored);
            CHECK(a.iso.rotation == b.iso.rotation);
            CHECK(std::fabs(a.iso.translation.x - b.iso.translation.x) < 1e-11);
            CHECK(std::fabs(a.iso.translation.y - b.iso.translation.y) < 1e-11);
        }
        CHECK(validate_patch(g.tileset, g.patch).ok);
        CHECK(verify_periodic(g.tileset, g.patch, g.lattice->first, g.lattice->second));
    }
}

TEST_CASE("exact atom angles survive serialization")
{
    DivisionResult r = divide(DivisionSpec::m4(gamma_star()));
    PatchFile f{r.tileset, r.assembly, std::nullopt};
    PatchFile g = patch_from_json(to_json(f));
    bool atoms = false;
    for (size_t i = 0; i < r.tileset.tiles.size(); ++i) {
        CHECK(g.tileset.tiles[i].shape.angles == r.tileset.tiles[i].shape.angles);
        for (const auto& a : g.tileset.tiles[i].shape.angles)
            atoms |= a.has_atoms();
    }
    CHECK(atoms);
    CHECK_FALSE(g.lattice.has_value());
}

TEST_CASE("malformed documents")
{
    CHECK(code_of([] { patch_from_json("{"); }) == "PARSE_ERROR");
    CHECK(code_of([] { patch_from_json("{\"tileset\": 3}"); }) == "PARSE_ERROR");
    CHECK(code_of([] { load_patch_file("/nonexistent/dir/x.json"); }) == "IO_ERROR");
    CHECK(code_of([] { save_patch_file("/nonexistent/dir/x.json", PatchFile{}); }) == "IO_ERROR");
}

TEST_CASE("file save and load")
{
    const Fixture& fx = fixture("FIG6");
    std::string path = (std::filesystem::temp_directory_path() / "tileforge_test_io.json").string();
    save_patch_file(path, {fx.tileset, fx.patch, fx.lattice});
    PatchFile g = load_patch_file(path);
    std::filesystem::remove(path);
    CHECK(g.patch.size() == fx.patch.size());
}

TEST_CASE("svg output")
{
    TileSet ts;
    ts.name = "hat";
    ts.tiles.push_back({kTile11Id, construct_tile11().shape, false});
    Patch one;
    one.placements.push_back({kTile11Id, Isometry{}});
    std::string svg = render_svg(ts, one);
    CHECK(count(svg, "<path") == 1);
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, std::regex("d=\"([^\"]*)\"")));
    std::string d = m[1];
    CHECK(count(d, "M") == 1);
    CHECK(count(d, "L") == 13);
    CHECK(count(d, "Z") == 1);
    CHECK(std::regex_search(svg, std::regex("[0-9]\\.[0-9]{6}[ ,\"]")));

    CHECK(count(render_svg(ts, Patch{}), "<path") == 0);

    const Fixture& f2 = fixture("FIG2");
    std::string a = render_svg(f2.tileset, f2.patch);
    CHECK(a == render_svg(f2.tileset, f2.patch));
    CHECK(count(a, "<path") == f2.patch.size());
    size_t mirrored = 0;
    for (const auto& p : f2.patch.placements)
        mirrored += p.iso.mirrored;
    CHECK(count(a, ">*</text>") == mirrored);

    Patch bad;
    bad.placements.push_back({kTile11Id, Isometry{}});
    bad.placements.push_back({kTile11Id, Isometry{ExactAngle(0), {0.3, 0.1}, false}});
    CHECK(code_of([&] { render_svg(ts, bad); }) == "INVALID_PATCH");
}
