#include "tileforge/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tf {

namespace {

const std::set<std::string> kReflectionFree = {"P1", "P3", "P4", "P5", "P6", "H1", "H3"};

// One labelling of the polygon: angles A, B, ... and edges a, b, ...
struct Labelling {
    std::vector<ExactAngle> A;
    std::vector<Real> e;
};

// All 2n labellings. Pentagon edge a joins E and A; hexagon edge a joins A and B.
std::vector<Labelling> labellings(const LabeledPolygon& p, bool edgeFollows)
{
    const size_t n = p.size();
    std::vector<Real> len(n);
    for (size_t i = 0; i < n; ++i)
        len[i] = p.edge_length(i);
    std::vector<Labelling> out;
    for (size_t s = 0; s < n; ++s)
        for (int dir : {1, -1}) {
            Labelling l;
            for (size_t k = 0; k < n; ++k) {
                size_t v = (s + n + dir * static_cast<long>(k) % static_cast<long>(n)) % n;
                l.A.push_back(p.angles[v]);
                // edge before v in traversal order
                l.e.push_back(dir == 1 ? len[(v + n - 1) % n] : len[v]);
            }
            if (edgeFollows)
                std::rotate(l.e.begin(), l.e.begin() + 1, l.e.end());
            out.push_back(std::move(l));
        }
    return out;
}

class Cond {
public:
    explicit Cond(const Labelling& l, Real scale) : l_(l), tol_(1e-9 * scale) {}
    const ExactAngle& A(size_t i) const { return l_.A[i]; }
    Real e(size_t i) const { return l_.e[i]; }
    bool len(Real x, Real y) const { return std::fabs(x - y) <= tol_; }

private:
    const Labelling& l_;
    Real tol_;
};

bool is(const ExactAngle& a, long v) { return a == ExactAngle(v); }

void pentagon_types(const Cond& c, std::set<std::string>& out)
{
    const ExactAngle &A = c.A(0), &B = c.A(1), &C = c.A(2), &D = c.A(3), &E = c.A(4);
    const Real a = c.e(0), b = c.e(1), cc = c.e(2), d = c.e(3), e = c.e(4);
    auto two = [](const ExactAngle& x) { return x * Rational(2); };
    if (is(A + B + C, 360))
        out.insert("P1");
    if (is(A + B + D, 360) && c.len(a, d))
        out.insert("P2");
    if (is(A, 120) && is(C, 120) && is(D, 120) && c.len(a, b) && c.len(d, cc + e))
        out.insert("P3");
    if (is(A, 90) && is(C, 90) && c.len(a, b) && c.len(cc, d))
        out.insert("P4");
    if (is(A, 60) && is(C, 120) && c.len(a, b) && c.len(cc, d))
        out.insert("P5");
    if (is(A + B + D, 360) && A == two(C) && c.len(a, b) && c.len(b, e) && c.len(cc, d))
        out.insert("P6");
    if (is(two(B) + C, 360) && is(two(D) + A, 360) && c.len(a, b) && c.len(b, cc) && c.len(cc, d))
        out.insert("P7");
    if (is(two(A) + B, 360) && is(two(D) + C, 360) && c.len(a, b) && c.len(b, cc) && c.len(cc, d))
        out.insert("P8");
    if (is(two(E) + B, 360) && is(two(D) + C, 360) && c.len(a, b) && c.len(b, cc) && c.len(cc, d))
        out.insert("P9");
    if (is(A, 90) && is(B + E, 180) && is(B + two(C), 360) && c.len(a, b) && c.len(b, cc + e))
        out.insert("P10");
    if (is(A, 90) && is(C + E, 180) && is(two(B) + C, 360) && c.len(2 * a + cc, d) && c.len(d, e))
        out.insert("P11");
    if (is(A, 90) && is(C + E, 180) && is(two(B) + C, 360) && c.len(2 * a, cc + e) && c.len(cc + e, d))
        out.insert("P12");
    if (is(A, 90) && is(C, 90) && is(two(B) + E, 360) && is(two(D) + E, 360) && c.len(cc, d) &&
        c.len(2 * cc, e))
        out.insert("P13");
    if (is(A, 90) && is(two(B) + C, 360) && is(C + E, 180) && c.len(a, cc) && c.len(2 * cc, d) &&
        c.len(d, e) && std::fabs(C.numeric() - type14_reference_angle()) <= 1e-9)
        out.insert("P14");
    if (is(A, 150) && is(B, 60) && is(C, 135) && is(D, 105) && is(E, 90) && c.len(a, cc) && c.len(cc, e) &&
        c.len(b, 2 * a))
        out.insert("P15");
}

void hexagon_types(const Cond& c, std::set<std::string>& out)
{
    const ExactAngle &B = c.A(1), &C = c.A(2), &D = c.A(3), &E = c.A(4), &F = c.A(5);
    const Real a = c.e(0), b = c.e(1), cc = c.e(2), d = c.e(3), e = c.e(4), f = c.e(5);
    if (is(B + C + D, 360) && c.len(a, d))
        out.insert("H1");
    if (is(B + C + E, 360) && c.len(a, d) && c.len(cc, e))
        out.insert("H2");
    if (is(B, 120) && is(D, 120) && is(F, 120) && c.len(a, b) && c.len(cc, d) && c.len(e, f))
        out.insert("H3");
}

TypeVerdict classify(const LabeledPolygon& p, bool hexagon)
{
    Real perimeter = 0;
    for (size_t i = 0; i < p.size(); ++i)
        perimeter += p.edge_length(i);
    const Real scale = perimeter / static_cast<Real>(p.size());
    TypeVerdict v;
    for (const auto& l : labellings(p, hexagon)) {
        Cond c(l, scale);
        if (hexagon)
            hexagon_types(c, v.families);
        else
            pentagon_types(c, v.families);
    }
    for (const auto& f : v.families)
        if (kReflectionFree.count(f))
            v.reflectionFree = true;
    return v;
}

} // namespace

std::string TypeVerdict::str() const
{
    if (families.empty())
        return "none";
    std::string s;
    // P2 before P10
    std::vector<std::string> order(families.begin(), families.end());
    std::sort(order.begin(), order.end(), [](const std::string& x, const std::string& y) {
        if (x[0] != y[0])
            return x[0] > y[0];
        return std::stoi(x.substr(1)) < std::stoi(y.substr(1));
    });
    for (const auto& f : order)
        s += (s.empty() ? "" : ",") + f;
    return s;
}

TypeVerdict classify_pentagon(const LabeledPolygon& p)
{
    if (p.size() != 5 || !is_convex(p))
        throw Error("NOT_PENTAGON", "'" + p.label + "' is not a convex pentagon");
    return classify(p, false);
}

TypeVerdict classify_hexagon(const LabeledPolygon& h)
{
    if (h.size() != 6 || !is_convex(h))
        throw Error("NOT_HEXAGON", "'" + h.label + "' is not a convex hexagon");
    return classify(h, true);
}

TypeVerdict classify_polygon(const LabeledPolygon& p)
{
    if (p.size() == 5 && is_convex(p))
        return classify(p, false);
    if (p.size() == 6 && is_convex(p))
        return classify(p, true);
    return {};
}

double type14_reference_angle()
{
    return std::acos((3 * std::sqrt(57.0) - 17) / 16) * 180 / std::acos(-1.0);
}

} // namespace tf
