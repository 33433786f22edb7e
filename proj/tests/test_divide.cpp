#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tileforge/divide.hpp"
#include "tileforge/tile11.hpp"

#include <cmath>

using namespace tf;

namespace {

std::vector<DivisionSpec> sweep()
{
    std::vector<DivisionSpec> s;
    for (int a = 75; a <= 180; ++a)
        s.push_back(DivisionSpec::m1(a));
    for (int b = 90; b <= 180; ++b)
        s.push_back(DivisionSpec::m2(b));
    for (int g = 75; g <= 180; ++g)
        s.push_back(DivisionSpec::m4(g));
    s.push_back(DivisionSpec::m4(gamma_star()));
    for (int i = 1; i < 20; ++i)
        s.push_back(DivisionSpec::m3(0.05 * i));
    for (int d = 105; d <= 165; ++d)
        for (int e = 66; e <= 120; ++e)
            if (d + e >= 180)
                s.push_back(DivisionSpec::d(d, e));
    for (int i = 1; i <= 14; ++i)
        s.push_back(DivisionSpec::d6(0.05 * i));
    return s;
}

// "pentagon", "hexagon", ... with type counts, read from the pieces directly
std::map<size_t, size_t> direct_types(const DivisionResult& r)
{
    std::vector<const LabeledPolygon*> reps;
    std::map<size_t, size_t> out;
    for (const auto& p : r.pieces) {
        bool seen = false;
        for (auto* q : reps)
            seen |= congruent(p, *q, false) == Congruence::Direct;
        if (!seen) {
            reps.push_back(&p);
            ++out[p.size()];
        }
    }
    return out;
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

TEST_CASE("partition property over the parameter sweep")
{
    const Real a11 = area(construct_tile11().shape);
    size_t degenerate = 0, total = 0;
    for (const auto& s : sweep()) {
        CAPTURE(s.name());
        ++total;
        DivisionResult r;
        try {
            r = divide(s);
        } catch (const Error& e) {
            REQUIRE(std::string(e.code()) == "DEGENERATE");
            ++degenerate;
            continue;
        }
        REQUIRE(r.pieces.size() == 5);
        Real sum = 0;
        for (const auto& p : r.pieces) {
            CHECK(is_convex(p));
            CHECK(p.size() >= 5);
            sum += area(p);
            // exact interior angle sum, atoms cancel
            ExactAngle total = angle_sum(p.angles);
            CHECK(total == ExactAngle(static_cast<long>(180 * (p.size() - 2))));
        }
        CHECK(std::fabs(sum - a11) < 1e-9);
        CHECK(validate_patch(r.tileset, r.assembly).ok);
    }
    MESSAGE(degenerate << " of " << total << " sweep points degenerate");
    CHECK(degenerate * 10 < total);
}

TEST_CASE("census by parameter range")
{
    using M = std::map<size_t, size_t>;
    for (int a : {76, 90, 104, 166, 179}) {
        CHECK(divide(DivisionSpec::m1(a)).census.summary() == "pentagon×2types, heptagon×1type; n=3, m=3");
        CHECK(direct_types(divide(DivisionSpec::m1(a))) == M{{5, 2}, {7, 1}});
    }
    for (int a : {106, 135, 164})
        CHECK(direct_types(divide(DivisionSpec::m1(a))) == M{{5, 1}, {6, 2}});
    for (int b : {91, 104, 166, 179})
        CHECK(direct_types(divide(DivisionSpec::m2(b))) == M{{5, 2}, {7, 1}});
    for (int b : {106, 135, 164})
        CHECK(direct_types(divide(DivisionSpec::m2(b))) == M{{5, 1}, {6, 2}});
    for (int g : {76, 93, 94, 120, 179})
        CHECK(direct_types(divide(DivisionSpec::m4(g))) == M{{5, 2}, {6, 1}});
    for (const auto& g : {ExactAngle(75), gamma_star(), ExactAngle(180)})
        CHECK(direct_types(divide(DivisionSpec::m4(g))) == M{{5, 3}});

    auto nm = [](int d, int e) {
        Census c = divide(DivisionSpec::d(d, e)).census;
        return std::make_pair(c.n, c.m);
    };
    using P = std::pair<size_t, size_t>;
    CHECK(nm(105, 80) == P{4, 3});
    CHECK(nm(105, 100) == P{4, 3});
    CHECK(nm(110, 70) == P{5, 3});
    CHECK(nm(114, 66) == P{5, 3});
    CHECK(nm(165, 70) == P{5, 3});
    CHECK(nm(165, 100) == P{5, 3});
    CHECK(nm(120, 80) == P{5, 3});
    CHECK(nm(140, 100) == P{5, 3});
}

TEST_CASE("coincidence identities")
{
    auto same = [](const DivisionSpec& a, const DivisionSpec& b) {
        DivisionResult x = divide(a), y = divide(b);
        std::vector<bool> used(y.pieces.size(), false);
        for (const auto& p : x.pieces) {
            bool hit = false;
            for (size_t j = 0; j < y.pieces.size() && !hit; ++j)
                if (!used[j] && congruent(p, y.pieces[j], false) == Congruence::Direct)
                    used[j] = hit = true;
            if (!hit)
                return false;
        }
        return true;
    };
    CHECK(same(DivisionSpec::m1(105), DivisionSpec::m2(105)));
    CHECK(same(DivisionSpec::m1(105), DivisionSpec::m4(150)));
    CHECK(same(DivisionSpec::m1(165), DivisionSpec::m2(165)));
    CHECK_FALSE(same(DivisionSpec::m1(98), DivisionSpec::m2(98)));
}

TEST_CASE("congruence structure")
{
    for (int a : {80, 98, 124, 170}) {
        DivisionResult r = divide(DivisionSpec::m1(a));
        int p1 = 0;
        for (size_t i = 0; i < r.pieces.size(); ++i)
            if (r.pieceTile[i] == "P1") {
                ++p1;
                CHECK(has_line_symmetry(r.pieces[i]));
            }
        CHECK(p1 == 3);
    }
    DivisionResult m3 = divide(DivisionSpec::m3(0.6));
    int quint = 0;
    for (const auto& p : m3.pieces)
        if (p.size() == 5 && p.angles == std::vector<ExactAngle>{90, 120, 105, 105, 120})
            ++quint;
    CHECK(quint >= 1);
}

TEST_CASE("domain errors")
{
    CHECK(code_of([] { divide(DivisionSpec::m1(74)); }) == "OUT_OF_DOMAIN");
    CHECK(code_of([] { divide(DivisionSpec::m2(181)); }) == "OUT_OF_DOMAIN");
    CHECK(code_of([] { divide(DivisionSpec::m3(0)); }) == "OUT_OF_DOMAIN");
    CHECK(code_of([] { divide(DivisionSpec::d(100, 90)); }) == "OUT_OF_DOMAIN");
    CHECK(code_of([] { divide(DivisionSpec::d(130, 40)); }) == "OUT_OF_DOMAIN");
}

TEST_CASE("subdivide multiplies placements by five")
{
    Patch one;
    one.placements.push_back({kTile11Id, Isometry{}});
    one.placements.push_back({kTile11Id, Isometry{ExactAngle(60), {3, 1}, false}});
    DivisionResult r = divide(DivisionSpec::m1(98));
    Patch sub = subdivide_patch(one, r);
    CHECK(sub.size() == 10);
    Real a = 0;
    for (const auto& p : sub.placements)
        a += area(placed_shape(r.tileset, p));
    CHECK(std::fabs(a - 2 * area(construct_tile11().shape)) < 1e-9);
}
