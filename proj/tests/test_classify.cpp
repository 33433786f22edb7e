#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tileforge/classify.hpp"
#include "tileforge/divide.hpp"

#include <cmath>
#include <numbers>

using namespace tf;

namespace {

using Families = std::set<std::string>;

Families of(const DivisionSpec& s, const std::string& piece)
{
    for (const auto& p : divide(s).pieces)
        if (p.label == piece)
            return classify_polygon(p).families;
    FAIL("no piece " << piece);
    return {};
}

bool contains(const Families& big, const Families& small)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

LabeledPolygon regular(int n)
{
    std::vector<Vec> v;
    std::vector<ExactAngle> a;
    for (int i = 0; i < n; ++i) {
        double t = 2 * std::numbers::pi * i / n;
        v.push_back({std::cos(t), std::sin(t)});
        Rational q(180 * (n - 2), n);
        q.canonicalize();
        a.emplace_back(q);
    }
    return make_polygon(v, a, "reg");
}

LabeledPolygon relabeled(const LabeledPolygon& p, size_t k)
{
    std::vector<Vec> v;
    std::vector<ExactAngle> a;
    for (size_t i = 0; i < p.size(); ++i) {
        v.push_back(p.vertices[(i + k) % p.size()]);
        a.push_back(p.angles[(i + k) % p.size()]);
    }
    return make_polygon(v, a, p.label);
}

LabeledPolygon scaled(const LabeledPolygon& p, double s)
{
    std::vector<Vec> v;
    for (Vec x : p.vertices)
        v.push_back(x * s);
    return make_polygon(v, p.angles, p.label, p.dir0);
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

TEST_CASE("Type 14 constant")
{
    double c = type14_reference_angle();
    CHECK(std::fabs(c - 69.32) < 0.01);
    CHECK(std::fabs(std::cos(c * std::numbers::pi / 180) - (3 * std::sqrt(57.0) - 17) / 16) < 1e-12);
}

TEST_CASE("reference polygons")
{
    CHECK(classify_hexagon(regular(6)).families == Families{"H1", "H2", "H3"});
    CHECK(classify_pentagon(regular(5)).families.empty());
    CHECK(classify_polygon(regular(4)).families.empty());

    // a house: square with an equilateral roof has a pair of parallel sides
    LabeledPolygon house = make_polygon({{0, 0}, {1, 0}, {1, 1}, {0.5, 1 + std::sqrt(3.0) / 2}, {0, 1}},
                                        {90, 90, 150, 60, 150}, "house");
    TypeVerdict v = classify_pentagon(house);
    CHECK(v.families.count("P1"));
    CHECK(v.reflectionFree);

    CHECK(code_of([] { classify_pentagon(regular(6)); }) == "NOT_PENTAGON");
    CHECK(code_of([] { classify_hexagon(regular(5)); }) == "NOT_HEXAGON");
}

TEST_CASE("anchored verdicts")
{
    CHECK(contains(of(DivisionSpec::m1(75), "P3"), {"H1"}));
    CHECK(contains(of(DivisionSpec::m1(90), "P2"), {"P2", "P4"}));
    CHECK(contains(of(DivisionSpec::m1(105), "P3"), {"H1"}));
    CHECK(contains(of(DivisionSpec::m2(90), "P2"), {"P2", "P4"}));
    CHECK(contains(of(DivisionSpec::m4(165), "P2"), {"P2", "P4"}));

    TypeVerdict m4 = classify_polygon(divide(DivisionSpec::m4(75)).tileset.at("P2").shape);
    CHECK(of(DivisionSpec::m4(75), "P2") == m4.families);
    CHECK(m4.families.count("P13"));
    CHECK_FALSE(m4.reflectionFree);
}

TEST_CASE("Table 1 rows that hold")
{
    // delta + epsilon = 210 at its symmetric point
    CHECK(contains(of(DivisionSpec::d(105, 105), "CP(X14)"), {"H1"}));
    for (int e : {80, 100}) {
        CHECK(contains(of(DivisionSpec::d(135, e), "CP(X3)"), {"H3"}));
        CHECK(contains(of(DivisionSpec::d(135, e), "CP(X7)"), {"H3"}));
    }
    for (int d : {110, 120, 130}) {
        CHECK(contains(of(DivisionSpec::d(d, 90), "CP(X9)"), {"P2", "P4"}));
        CHECK(contains(of(DivisionSpec::d(d, 90), "CP(X11)"), {"P2", "P4"}));
    }
    DivisionSpec both = DivisionSpec::d(135, 90);
    CHECK(contains(of(both, "CP(X14)"), {"H3"}));
    CHECK(contains(of(both, "CP(X3)"), {"H3"}));
    CHECK(contains(of(both, "CP(X9)"), {"P2", "P4"}));
    for (int d : {105, 120, 130, 150})
        CHECK(contains(of(DivisionSpec::d(d, 120), "CP(X14)"), {"P1"}));
}

TEST_CASE("non-monotile pieces")
{
    for (const auto& s : {DivisionSpec::m1(98), DivisionSpec::m1(124), DivisionSpec::m2(180), DivisionSpec::m3(0.6),
                          DivisionSpec::d(105, 75)}) {
        CAPTURE(s.name());
        for (const auto& p : divide(s).pieces)
            CHECK(classify_polygon(p).families.empty());
    }
}

TEST_CASE("verdicts are invariant under relabeling, mirroring, isometry and scale")
{
    std::vector<LabeledPolygon> polys;
    for (const auto& s : {DivisionSpec::m1(75), DivisionSpec::m1(90), DivisionSpec::m4(75), DivisionSpec::d(135, 90),
                          DivisionSpec::d(130, 120), DivisionSpec::m1(98)})
        for (const auto& p : divide(s).pieces)
            polys.push_back(p);
    polys.push_back(regular(6));
    for (const auto& p : polys) {
        CAPTURE(p.label);
        Families base = classify_polygon(p).families;
        for (size_t k = 1; k < p.size(); ++k)
            CHECK(classify_polygon(relabeled(p, k)).families == base);
        CHECK(classify_polygon(reflect(p)).families == base);
        CHECK(classify_polygon(apply(Isometry{ExactAngle(37), {2, -5}, false}, p)).families == base);
        CHECK(classify_polygon(scaled(p, 0.5)).families == base);
        CHECK(classify_polygon(scaled(p, 2)).families == base);
    }
}

TEST_CASE("reflectionFree follows the family list")
{
    const Families free{"P1", "P3", "P4", "P5", "P6", "H1", "H3"};
    for (const auto& s : {DivisionSpec::m1(75), DivisionSpec::m1(90), DivisionSpec::m4(75), DivisionSpec::d(135, 90),
                          DivisionSpec::d(130, 120)})
        for (const auto& p : divide(s).pieces) {
            TypeVerdict v = classify_polygon(p);
            bool expect = false;
            for (const auto& f : v.families)
                expect |= free.count(f) > 0;
            CHECK(v.reflectionFree == expect);
        }
}
