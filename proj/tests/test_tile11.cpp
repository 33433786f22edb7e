#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tileforge/tile11.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace tf;

namespace {

// Walk the boundary from the interior angles alone and return the shoelace area.
double walk_area(const std::vector<ExactAngle>& angles, std::complex<double>* closure)
{
    const double deg = std::numbers::pi / 180;
    std::complex<double> p = 0;
    double heading = 0;
    double a2 = 0;
    for (size_t i = 0; i < angles.size(); ++i) {
        std::complex<double> q = p + std::polar(1.0, heading * deg);
        a2 += p.real() * q.imag() - q.real() * p.imag();
        p = q;
        heading += 180 - angles[(i + 1) % angles.size()].numeric();
    }
    *closure = p;
    return a2 / 2;
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

} // namespace

TEST_CASE("construction invariants")
{
    const Tile11& t = construct_tile11();
    REQUIRE(t.shape.size() == 14);
    for (int k = 1; k <= 14; ++k) {
        CHECK(std::fabs(dist(t.X(k), t.X(k + 1)) - 1) < 1e-12);
        CHECK(t.angle(k).is_rational());
        CHECK(t.angle(k).q0.get_den() == 1);
        CHECK(t.angle(k).q0.get_num() % 30 == 0);
        CHECK(t.vertexLabels[k - 1] == "X" + std::to_string(k));
    }
    CHECK(angle_sum(t.shape.angles) == ExactAngle(2160));
    for (int k : {3, 7, 9, 11})
        CHECK(t.angle(k) == ExactAngle(90));
    int straight = 0;
    for (int k = 1; k <= 14; ++k)
        straight += t.angle(k) == ExactAngle(180);
    CHECK(straight == 1);
    CHECK(t.angle(13) == ExactAngle(180));
    CHECK_FALSE(is_convex(t.shape));
}

TEST_CASE("area matches an independent boundary walk")
{
    const Tile11& t = construct_tile11();
    std::complex<double> end;
    double a = walk_area(t.shape.angles, &end);
    CHECK(std::abs(end) < 1e-9);
    CHECK(a > 0);
    CHECK(std::fabs(area(t.shape) - a) < 1e-9);
    CHECK(std::fabs(area(construct_tile11().shape) - area(t.shape)) == 0);
}

TEST_CASE("edge directions follow the turn sequence")
{
    const Tile11& t = construct_tile11();
    for (int k = 1; k <= 14; ++k) {
        Vec d = t.X(k + 1) - t.X(k);
        double want = t.edge_dir(k).numeric();
        double got = direction_deg(d);
        double diff = std::fmod(std::fabs(want - got) + 360, 360);
        CHECK(std::min(diff, 360 - diff) < 1e-9);
    }
}

TEST_CASE("fixtures validate and certify")
{
    std::vector<std::string> ids = fixture_ids();
    CHECK(ids.size() == 8);
    for (const auto& id : ids) {
        CAPTURE(id);
        const Fixture& f = fixture(id);
        CHECK(f.tileset.name == id);
        CHECK_FALSE(f.patch.empty());
        CHECK(validate_patch(f.tileset, f.patch).ok);
        REQUIRE(f.lattice.has_value());
        CHECK(verify_periodic(f.tileset, f.patch, f.lattice->first, f.lattice->second));
    }
    CHECK(&fixture("FIG6") == &fixture("FIG6"));
}

TEST_CASE("fixture chirality")
{
    auto mirrored = [](const Fixture& f) {
        size_t n = 0;
        for (const auto& p : f.patch.placements)
            n += p.iso.mirrored;
        return n;
    };
    const Fixture& f2 = fixture("FIG2");
    CHECK(f2.tileset.tiles.size() == 1);
    CHECK(f2.tileset.tiles[0].mayReflect);
    CHECK(mirrored(f2) > 0);
    CHECK(mirrored(f2) < f2.patch.size());

    Patch oneSided;
    for (const auto& p : f2.patch.placements)
        if (!p.iso.mirrored)
            oneSided.placements.push_back(p);
    CHECK(validate_patch(f2.tileset, oneSided).ok);

    CHECK(mirrored(fixture("FIG27A")) == 0);
    CHECK(mirrored(fixture("FIG27B")) == 0);
    CHECK(mirrored(fixture("FIG28")) > 0);

    for (const char* id : {"FIG2", "FIG28", "FIG9AD"}) {
        const Fixture& f = fixture(id);
        TileSet strict = f.tileset;
        for (auto& t : strict.tiles)
            t.mayReflect = false;
        CHECK(code_of([&] { validate_patch(strict, f.patch); }) == "POLICY_VIOLATION");
    }
}

TEST_CASE("unknown figure")
{
    CHECK(code_of([] { fixture("FIG99"); }) == "UNKNOWN_FIGURE");
}
