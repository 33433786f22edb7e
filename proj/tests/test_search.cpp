#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tileforge/search.hpp"
#include "tileforge/tile11.hpp"

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

TileSet squares()
{
    TileSet ts;
    ts.name = "square";
    ts.tiles.push_back({"S", make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {90, 90, 90, 90}, "S", ExactAngle(0)), false});
    return ts;
}

} // namespace

TEST_CASE("unique anchored stars")
{
    SearchPolicy pol;
    DivisionResult m1 = divide(DivisionSpec::m1(98));
    auto s = enumerate_vertex_stars(m1.tileset, pol, std::make_pair(std::string("P3"), 0));
    REQUIRE(s.size() == 1);
    CHECK(s[0].sum() == ExactAngle(360));
    CHECK(s[0].kind == VertexStar::Kind::Full);
    std::multiset<std::string> got;
    for (const auto& c : s[0].corners)
        got.insert(c.angle.str());
    CHECK(got == std::multiset<std::string>{"105", "157", "98"});
    CHECK(validate_patch(m1.tileset, s[0].witness).ok);

    DivisionResult d = divide(DivisionSpec::d(105, 75));
    auto t = enumerate_vertex_stars(d.tileset, pol, std::make_pair(std::string("CP(X9)"), 2));
    REQUIRE(t.size() == 1);
    CHECK(t[0].corners.size() == 3);
    CHECK(t[0].sum() == ExactAngle(360));
}

TEST_CASE("every star closes exactly")
{
    SearchPolicy pol;
    pol.starExtension = 0;
    DivisionResult m1 = divide(DivisionSpec::m1(124));
    auto stars = enumerate_vertex_stars(m1.tileset, pol);
    CHECK_FALSE(stars.empty());
    for (const auto& s : stars) {
        CHECK(s.sum() == ExactAngle(360));
        int onEdge = 0;
        for (const auto& c : s.corners) {
            CHECK_FALSE(c.mirrored);
            onEdge += c.corner < 0;
        }
        CHECK(onEdge == (s.kind == VertexStar::Kind::Flat ? 1 : 0));
    }
    pol.maxStars = 1;
    CHECK(code_of([&] { enumerate_vertex_stars(m1.tileset, pol); }) == "EXPLOSION");
}

TEST_CASE("stars need convex tiles")
{
    TileSet ts;
    ts.tiles.push_back({kTile11Id, construct_tile11().shape, false});
    CHECK(code_of([&] { enumerate_vertex_stars(ts, SearchPolicy{}); }) == "NOT_CONVEX");
}

TEST_CASE("forced assembly in small cases")
{
    SearchPolicy pol;
    for (const auto& s : {DivisionSpec::m1(98), DivisionSpec::m1(124)}) {
        CAPTURE(s.name());
        DivisionResult r = divide(s);
        CoronaReport rep = check_forced_assembly(r.tileset, r, pol);
        CHECK(rep.status == CoronaStatus::AllCompletionsForced);
        CHECK(rep.completions > 0);
    }
}

TEST_CASE("subset probes")
{
    SearchPolicy pol;
    DivisionResult r = divide(DivisionSpec::m1(165));
    CoronaReport rep = subset_tiling_probe(r.tileset, {"P1", "P2"}, pol);
    REQUIRE(rep.status == CoronaStatus::PeriodicFound);
    REQUIRE(rep.unit.has_value());
    REQUIRE(rep.lattice.has_value());
    CHECK(verify_periodic(rep.unitTiles, *rep.unit, rep.lattice->first, rep.lattice->second));

    DivisionResult m4 = divide(DivisionSpec::m4(75));
    CHECK(subset_tiling_probe(m4.tileset, {"P2"}, pol).status == CoronaStatus::NoCompletion);
    SearchPolicy refl = pol;
    refl.allowReflection = true;
    CoronaReport both = subset_tiling_probe(m4.tileset.with_reflection("P2", true), {"P2"}, refl);
    REQUIRE(both.status == CoronaStatus::PeriodicFound);
    bool mirrored = false;
    for (const auto& p : both.unit->placements)
        mirrored |= p.iso.mirrored;
    CHECK(mirrored);
    CHECK(code_of([&] { subset_tiling_probe(m4.tileset, {}, pol); }) == "OUT_OF_DOMAIN");
}

TEST_CASE("periodic finder on a square")
{
    CoronaReport rep = find_periodic(squares(), SearchPolicy{});
    REQUIRE(rep.status == CoronaStatus::PeriodicFound);
    CHECK(rep.unit->size() == 1);
    CHECK(std::fabs(std::fabs(cross(rep.lattice->first, rep.lattice->second)) - 1) < 1e-9);
}

TEST_CASE("grown patches")
{
    TileSet ts;
    ts.name = "hat";
    ts.tiles.push_back({kTile11Id, construct_tile11().shape, false});
    Patch p = grow_patch(ts, 20, SearchPolicy{});
    CHECK(p.size() >= 20);
    ValidationReport v = validate_patch(ts, p);
    CHECK(v.ok);
    for (const auto& pl : p.placements)
        CHECK_FALSE(pl.iso.mirrored);

    SearchPolicy tiny;
    tiny.maxPlacements = 3;
    CHECK(code_of([&] { grow_patch(ts, 200, tiny); }) == "RESOURCE_LIMIT");
}
