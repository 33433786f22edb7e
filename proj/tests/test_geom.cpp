#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tileforge/divide.hpp"
#include "tileforge/geom.hpp"
#include "tileforge/tile11.hpp"

#include <cmath>
#include <random>

using namespace tf;

namespace {

LabeledPolygon unit_square()
{
    return make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {90, 90, 90, 90}, "sq");
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

TEST_CASE("make_polygon validation")
{
    CHECK(unit_square().size() == 4);
    CHECK(code_of([] { make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {90, 90, 90, 120}, "bad"); }) ==
          "ANGLE_MISMATCH");
    CHECK(code_of([] { make_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}, {90, 90, 90, 90}, "bow"); }) != "");
}

TEST_CASE("area and isometries")
{
    LabeledPolygon sq = unit_square();
    CHECK(area(sq) == doctest::Approx(1.0).epsilon(1e-12));
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> rot(0, 23);
    std::uniform_real_distribution<double> tr(-5, 5);
    const LabeledPolygon& t = construct_tile11().shape;
    for (int i = 0; i < 50; ++i) {
        Isometry iso{ExactAngle(15 * rot(rng)), {tr(rng), tr(rng)}, i % 2 == 1};
        LabeledPolygon q = apply(iso, t);
        CHECK(std::fabs(area(q) - area(t)) < 1e-9);
        for (size_t k = 0; k < t.size(); ++k)
            CHECK(std::fabs(q.edge_length(k) - 1) < 1e-9);
        CHECK(congruent(t, q, true) == (iso.mirrored ? Congruence::Mirror : Congruence::Direct));
    }
}

TEST_CASE("convexity")
{
    CHECK_FALSE(is_convex(construct_tile11().shape));
    for (int a = 75; a <= 180; a += 15) {
        DivisionResult r = divide(DivisionSpec::m1(a));
        for (const auto& p : r.pieces)
            CHECK(is_convex(p));
    }
}

TEST_CASE("congruence relations")
{
    LabeledPolygon sq = unit_square();
    CHECK(congruent(sq, sq, false) == Congruence::Direct);

    DivisionResult m1 = divide(DivisionSpec::m1(98));
    std::vector<const LabeledPolygon*> p1;
    for (size_t i = 0; i < m1.pieces.size(); ++i)
        if (m1.pieceTile[i] == "P1")
            p1.push_back(&m1.pieces[i]);
    REQUIRE(p1.size() == 3);
    for (auto* a : p1)
        for (auto* b : p1)
            CHECK(congruent(*a, *b, false) == Congruence::Direct);

    DivisionResult d = divide(DivisionSpec::d(120, 90));
    const LabeledPolygon *x3 = nullptr, *x7 = nullptr;
    for (const auto& p : d.pieces) {
        if (p.label == "CP(X3)")
            x3 = &p;
        if (p.label == "CP(X7)")
            x7 = &p;
    }
    REQUIRE(x3);
    REQUIRE(x7);
    CHECK(congruent(*x3, *x7, true) == Congruence::Mirror);
    CHECK(congruent(*x3, *x7, false) == Congruence::None);
}

TEST_CASE("line symmetry")
{
    DivisionResult m1 = divide(DivisionSpec::m1(98));
    for (size_t i = 0; i < m1.pieces.size(); ++i) {
        const auto& p = m1.pieces[i];
        // reflect-and-match oracle
        bool oracle = congruent(p, reflect(p), false) == Congruence::Direct;
        CHECK(has_line_symmetry(p) == oracle);
        if (m1.pieceTile[i] == "P1")
            CHECK(has_line_symmetry(p));
        if (p.size() == 7)
            CHECK_FALSE(has_line_symmetry(p));
    }
    DivisionResult m2 = divide(DivisionSpec::m2(90));
    CHECK(has_line_symmetry(m2.tileset.at("P2").shape));
}

TEST_CASE("property: congruence is symmetric")
{
    std::vector<LabeledPolygon> all;
    for (int a : {90, 98, 124, 165})
        for (const auto& p : divide(DivisionSpec::m1(a)).pieces)
            all.push_back(p);
    for (const auto& p : all)
        for (const auto& q : all) {
            CHECK(congruent(p, q, false) == congruent(q, p, false));
            CHECK(congruent(p, q, true) == congruent(q, p, true));
        }
}
