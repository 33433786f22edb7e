#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tileforge/divide.hpp"
#include "tileforge/tile11.hpp"

#include <cmath>
#include <random>

using namespace tf;

namespace {

TileSet squares()
{
    TileSet ts;
    ts.name = "square";
    ts.tiles.push_back({"S", make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {90, 90, 90, 90}, "S", ExactAngle(0)), false});
    return ts;
}

Placement at(const std::string& id, Real x, Real y, long rot = 0, bool mirrored = false)
{
    return {id, Isometry{ExactAngle(rot), {x, y}, mirrored}};
}

std::string code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

Patch transformed(const Patch& p, const Isometry& g)
{
    Patch q;
    for (const auto& pl : p.placements)
        q.placements.push_back({pl.tile, g.compose(pl.iso)});
    return q;
}

} // namespace

TEST_CASE("unit square lattice")
{
    TileSet ts = squares();
    Patch p;
    p.placements.push_back(at("S", 0, 0));
    CHECK(verify_periodic(ts, p, {1, 0}, {0, 1}));
    CHECK(verify_periodic(ts, p, {0, 1}, {1, 0}));
    CHECK(verify_periodic(ts, p, {1, 0}, {3, 1}));
    CHECK(verify_periodic(ts, p, {1, 0}, {0.5, 1}));
    CHECK_FALSE(verify_periodic(ts, p, {2, 0}, {0, 1}));
    CHECK_FALSE(verify_periodic(ts, p, {1, 0}, {0.5, 0.5}));
    CHECK(code_of([&] { verify_periodic(ts, p, {1, 0}, {2, 0}); }) == "DEGENERATE_LATTICE");
}

TEST_CASE("basis changes do not affect certification")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-3, 3);
    for (const char* id : {"FIG6", "FIG7", "FIG25"}) {
        const Fixture& f = fixture(id);
        Vec a = f.lattice->first, b = f.lattice->second;
        for (int k = 0; k < 10; ++k) {
            // random unimodular matrix as a product of shears
            int s = d(rng), t = d(rng);
            Vec a1 = a + b * static_cast<Real>(s);
            Vec b1 = b + a1 * static_cast<Real>(t);
            CAPTURE(id);
            CHECK(verify_periodic(f.tileset, f.patch, a1, b1));
            CHECK(verify_periodic(f.tileset, f.patch, b1, a1));
        }
        CHECK_FALSE(verify_periodic(f.tileset, f.patch, a * 2.0, b));
    }
}

TEST_CASE("single placement and simple square grids")
{
    TileSet ts = squares();
    Patch one;
    one.placements.push_back(at("S", 5, -2, 30));
    ValidationReport r = validate_patch(ts, one);
    CHECK(r.ok);
    CHECK(r.edgeToEdge);

    Patch grid;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            grid.placements.push_back(at("S", i, j));
    r = validate_patch(ts, grid);
    CHECK(r.ok);
    CHECK(r.edgeToEdge);
    CHECK(r.contacts.size() == 24);

    // brick bond: second row shifted by half an edge
    Patch brick;
    for (int i = 0; i < 4; ++i) {
        brick.placements.push_back(at("S", i, 0));
        brick.placements.push_back(at("S", i + 0.5, 1));
    }
    r = validate_patch(ts, brick);
    CHECK(r.ok);
    CHECK_FALSE(r.edgeToEdge);
}

TEST_CASE("overlap detection")
{
    TileSet ts = squares();
    Patch p;
    p.placements.push_back(at("S", 0, 0));
    p.placements.push_back(at("S", 0.5, 0.25));
    ValidationReport r = validate_patch(ts, p);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.overlaps.empty());

    Patch rot;
    rot.placements.push_back(at("S", 0, 0));
    rot.placements.push_back(at("S", 1.2, 0.2, 45));
    CHECK_FALSE(validate_patch(ts, rot).ok);
}

TEST_CASE("reflection policy and unknown tiles")
{
    TileSet ts = squares();
    Patch p;
    p.placements.push_back(at("S", 0, 0, 0, true));
    CHECK(code_of([&] { validate_patch(ts, p); }) == "POLICY_VIOLATION");
    CHECK(code_of([&] { check_policy(ts, p); }) == "POLICY_VIOLATION");
    CHECK(validate_patch(ts.with_reflection("S", true), p).ok);

    Patch q;
    q.placements.push_back(at("Q", 0, 0));
    CHECK(code_of([&] { validate_patch(ts, q); }) == "UNKNOWN_TILE");
    CHECK(code_of([&] { ts.at("Q"); }) == "UNKNOWN_TILE");
    CHECK(ts.find("Q") == nullptr);
    CHECK(ts.index_of("S") == 0);
}

TEST_CASE("sub-patches of a valid patch are valid")
{
    DivisionResult r = divide(DivisionSpec::m1(98));
    const Fixture& f = fixture("FIG7");
    std::mt19937 rng(11);
    for (const Patch* whole : {static_cast<const Patch*>(&r.assembly), &f.patch}) {
        const TileSet& ts = whole == &r.assembly ? r.tileset : f.tileset;
        for (int k = 0; k < 20; ++k) {
            Patch sub;
            for (const auto& pl : whole->placements)
                if (rng() % 2)
                    sub.placements.push_back(pl);
            CHECK(validate_patch(ts, sub).ok);
        }
    }
}

TEST_CASE("validation is invariant under global isometries")
{
    const Fixture& f = fixture("FIG6");
    DivisionResult r = divide(DivisionSpec::m1(124));
    for (long rot : {0L, 30L, 45L, 97L, 180L, 271L}) {
        Isometry g{ExactAngle(rot), {3.25, -1.5}, false};
        CHECK(validate_patch(f.tileset, transformed(f.patch, g)).ok);
        ValidationReport a = validate_patch(r.tileset, transformed(r.assembly, g));
        CHECK(a.ok);
        CHECK_FALSE(a.edgeToEdge);
    }
    // mirroring is allowed only when every tile may reflect
    TileSet all = f.tileset;
    for (auto& t : all.tiles)
        t.mayReflect = true;
    Isometry m{ExactAngle(60), {1, 2}, true};
    CHECK(validate_patch(all, transformed(f.patch, m)).ok);
    CHECK(code_of([&] { validate_patch(f.tileset, transformed(f.patch, m)); }) == "POLICY_VIOLATION");
}

TEST_CASE("subdivided patches stay valid but lose edge-to-edge")
{
    const Fixture& f = fixture("FIG2");
    Patch oneSided;
    for (const auto& p : f.patch.placements)
        if (!p.iso.mirrored)
            oneSided.placements.push_back(p);
    DivisionResult r = divide(DivisionSpec::m1(98));
    Patch sub = subdivide_patch(oneSided, r);
    CHECK(sub.size() == 5 * oneSided.size());
    ValidationReport v = validate_patch(r.tileset, sub);
    CHECK(v.ok);
    CHECK_FALSE(v.edgeToEdge);
}
