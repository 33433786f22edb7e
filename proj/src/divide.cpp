#include "tileforge/divide.hpp"

#include "tileforge/tile11.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace tf {

namespace {

struct NamedPt {
    Vec p;
};

Vec X(int k) { return construct_tile11().X(k); }

Vec bisector(int k) { return unit_dir(construct_tile11().bisector_dir(k).numeric()); }

Vec along(int from, int to) { return unit_dir(direction_deg(X(to) - X(from))); }

// Splits a counterclockwise region by the ray from region[pivot].
// First piece runs pivot -> ... -> hit point, second hit -> ... -> pivot.
std::pair<std::vector<Vec>, std::vector<Vec>> cut_region(const std::vector<Vec>& region, size_t pivot,
                                                          Vec direction)
{
    const size_t n = region.size();
    const Vec o = region[pivot];
    Real bestS = 1e300, bestU = 0;
    size_t bestK = n;
    for (size_t k = 0; k < n; ++k) {
        size_t k1 = (k + 1) % n;
        if (k == pivot || k1 == pivot)
            continue;
        Vec a = region[k], e = region[k1] - a;
        Real den = cross(direction, e);
        if (std::fabs(den) < 1e-14)
            continue;
        Real s = cross(a - o, e) / den;
        Real u = cross(a - o, direction) / den;
        if (s > 1e-12 && u >= -1e-12 && u <= 1 + 1e-12 && s < bestS) {
            bestS = s;
            bestU = u;
            bestK = k;
        }
    }
    if (bestK == n)
        throw Error("DEGENERATE", "cut ray leaves the region without a hit");
    (void)bestU;
    Vec hit = o + direction * bestS;
    std::vector<Vec> a, b;
    for (size_t i = pivot;; i = (i + 1) % n) {
        a.push_back(region[i]);
        if (i == bestK)
            break;
    }
    a.push_back(hit);
    b.push_back(hit);
    for (size_t i = (bestK + 1) % n;; i = (i + 1) % n) {
        b.push_back(region[i]);
        if (i == pivot)
            break;
    }
    return {a, b};
}

// Turns raw vertices into a labeled polygon with exact angles: merges
// coincident points and absorbs straight corners.
LabeledPolygon finish_piece(std::vector<Vec> pts, const std::vector<ExactAngle>& basis,
                            const std::string& label)
{
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i < pts.size() && pts.size() > 2; ++i) {
            if (dist(pts[i], pts[(i + 1) % pts.size()]) < kLengthTol) {
                pts.erase(pts.begin() + static_cast<long>((i + 1) % pts.size()));
                changed = true;
                break;
            }
        }
    }
    std::vector<ExactAngle> ang;
    for (bool changed = true; changed;) {
        changed = false;
        ang.clear();
        auto num = numeric_angles(pts);
        for (size_t i = 0; i < pts.size(); ++i) {
            auto s = snap_angle(num[i], basis);
            if (!s)
                throw Error("INTERNAL", label + ": corner angle " + std::to_string(num[i]) + " not expressible");
            ang.push_back(*s);
        }
        for (size_t i = 0; i < pts.size(); ++i) {
            if (ang[i] == ExactAngle(180)) {
                pts.erase(pts.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    if (pts.size() < 5)
        throw Error("DEGENERATE", label + " collapses to " + std::to_string(pts.size()) + " edges");
    for (const auto& a : ang)
        if (!(a < ExactAngle(180)))
            throw Error("DEGENERATE", label + " is not strictly convex");
    auto d0 = snap_angle(direction_deg(pts[1] - pts[0]), basis);
    if (!d0)
        throw Error("INTERNAL", label + ": edge direction not expressible");
    return make_polygon(pts, ang, label, *d0);
}

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Error("OUT_OF_DOMAIN", what);
}

bool between(const ExactAngle& v, long lo, long hi) { return v >= ExactAngle(lo) && v <= ExactAngle(hi); }

struct Raw {
    std::vector<std::vector<Vec>> pts;
    std::vector<std::string> labels;
    std::vector<ExactAngle> basis;
};

std::vector<Vec> p1_at(int k)
{
    Vec R = X(8) + bisector(8), S = X(10) + bisector(10);
    switch (k) {
    case 3: return {X(3), X(4), X(5), X(1), X(2)};
    case 7: return {X(7), X(8), R, X(5), X(6)};
    case 9: return {X(9), X(10), S, R, X(8)};
    default: return {X(11), X(12), X(13), S, X(10)};
    }
}

Raw raw_m1(const ExactAngle& alpha)
{
    require(between(alpha, 75, 180), "M1 needs 75 <= alpha <= 180");
    Vec R = X(8) + bisector(8), S = X(10) + bisector(10);
    std::vector<Vec> reg = {X(14), X(1), X(5), X(6), X(7), X(8), R, S, X(13)};
    Vec d = rotate(unit_dir(direction_deg(X(8) - R)), -alpha.numeric());
    auto [p3, p2] = cut_region(reg, 6, d);
    return {{p1_at(3), p1_at(9), p1_at(11), p2, p3}, {"P1", "P1", "P1", "P2", "P3"}, {alpha}};
}

Raw raw_m2(const ExactAngle& beta)
{
    require(between(beta, 90, 180), "M2 needs 90 <= beta <= 180");
    Vec R = X(8) + bisector(8), S = X(10) + bisector(10);
    std::vector<Vec> reg = {X(1), X(2), X(3), X(4), X(5), R, S, X(13), X(14)};
    Vec d = rotate(along(1, 2), beta.numeric());
    auto [p2, p3] = cut_region(reg, 0, d);
    return {{p1_at(7), p1_at(9), p1_at(11), p2, p3}, {"P1", "P1", "P1", "P2", "P3"}, {beta}};
}

Raw raw_m4(const ExactAngle& gamma)
{
    require(between(gamma, 75, 180), "M4 needs 75 <= gamma <= 180");
    Vec R = X(8) + bisector(8), S = X(10) + bisector(10);
    std::vector<Vec> reg = {X(14), X(1), X(5), R, S, X(10), X(11), X(12), X(13)};
    Vec d = rotate(unit_dir(direction_deg(R - S)), -gamma.numeric());
    auto [p2, p3] = cut_region(reg, 4, d);
    return {{p1_at(3), p1_at(7), p1_at(9), p2, p3}, {"P1", "P1", "P1", "P2", "P3"}, {gamma}};
}

Raw raw_m3(Real t)
{
    require(t > 0 && t < 1, "M3 needs 0 < t < 1");
    Vec Q = X(6) + along(6, 5) * t;
    Vec R = X(8) + bisector(8) * t;
    Vec S = X(10) + bisector(10) * t;
    Vec T = X(12) + along(12, 13) * t;
    return {{p1_at(3), {X(7), X(8), R, Q, X(6)}, {X(9), X(10), S, R, X(8)}, {X(11), X(12), T, S, X(10)},
             {X(14), X(1), X(5), Q, R, S, T, X(13)}},
            {"CP1(X3)", "CP1(X7)", "CP1(X9)", "CP1(X11)", "CP1(X14)"},
            {}};
}

Raw raw_d(const ExactAngle& delta, const ExactAngle& eps)
{
    require(between(delta, 105, 165), "D needs 105 <= delta <= 165");
    require(eps <= ExactAngle(120), "D needs epsilon <= 120");
    if (eps == epsilon_star())
        throw Error("DEGENERATE", "epsilon = epsilon* puts T on X10");
    require(eps > epsilon_star(), "D needs epsilon > epsilon*");
    require(delta + eps >= ExactAngle(180), "D needs delta + epsilon >= 180");
    Vec R = X(8) + bisector(8);
    auto P = line_intersection(X(5), bisector(5), X(1), rotate(along(1, 2), delta.numeric()));
    auto T = line_intersection(X(10), bisector(10), R, rotate(unit_dir(direction_deg(X(8) - R)), eps.numeric()));
    if (!P || !T)
        throw Error("DEGENERATE", "construction lines are parallel");
    return {{{X(3), X(4), X(5), *P, X(1), X(2)},
             {X(7), X(8), R, *P, X(5), X(6)},
             {X(9), X(10), *T, R, X(8)},
             {X(11), X(12), X(13), *T, X(10)},
             {X(14), X(1), *P, R, *T, X(13)}},
            {"CP(X3)", "CP(X7)", "CP(X9)", "CP(X11)", "CP(X14)"},
            {delta, eps}};
}

Raw raw_d6(Real u, const ExactAngle& zeta, Real& ell)
{
    require(u > 0 && u < 1, "D6 needs 0 < u < 1");
    require(between(zeta, 90, 120), "D6 needs 90 <= zeta <= 120");
    Vec Q = X(6) + along(6, 5) * u;
    Vec d = rotate(unit_dir(direction_deg(X(6) - Q)), zeta.numeric());
    auto R = line_intersection(Q, d, X(8), bisector(8));
    if (!R)
        throw Error("DEGENERATE", "cut from Q parallel to the X8 bisector");
    ell = dot(*R - X(8), bisector(8));
    require(ell > kLengthTol, "D6 cut from Q misses the X8 bisector");
    require(ell <= 1 + 1e-12, "D6 puts T beyond X13 (X12T = " + std::to_string(ell) + ")");
    Vec S = X(10) + bisector(10) * u;
    Vec T = X(12) + along(12, 13) * std::min<Real>(ell, 1);
    return {{p1_at(3), {X(7), X(8), *R, Q, X(6)}, {X(9), X(10), S, *R, X(8)}, {X(11), X(12), T, S, X(10)},
             {X(14), X(1), X(5), Q, *R, S, T, X(13)}},
            {"CP2(X3)", "CP2(X7)", "CP2(X9)", "CP2(X11)", "CP2(X14)"},
            {zeta}};
}

std::string fmt_real(Real v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

namespace detail {

double measure_atom(Atom a)
{
    const auto& t = construct_tile11();
    auto bis = [&](int k) { return unit_dir(t.bisector_dir(k).numeric()); };
    Vec R = t.X(8) + bis(8), S = t.X(10) + bis(10);
    auto turn = [](Vec from, Vec to) {
        Real d = direction_deg(from) - direction_deg(to);
        d = std::fmod(d, 360.0);
        return d < 0 ? d + 360.0 : d;
    };
    if (a == Atom::GammaStarExcess)
        return turn(R - S, t.X(14) - S) - 75.0; // cut from S lands on X14
    return turn(t.X(10) - R, t.X(8) - R) - 60.0; // T lands on X10
}

} // namespace detail

const char* to_string(Method m)
{
    switch (m) {
    case Method::M1: return "M1";
    case Method::M2: return "M2";
    case Method::M3: return "M3";
    case Method::M4: return "M4";
    case Method::D: return "D";
    default: return "D6";
    }
}

Method parse_method(const std::string& s)
{
    for (Method m : {Method::M1, Method::M2, Method::M3, Method::M4, Method::D, Method::D6})
        if (s == to_string(m))
            return m;
    throw Error("USAGE", "unknown method '" + s + "'");
}

DivisionSpec DivisionSpec::m1(ExactAngle a) { return {Method::M1, std::move(a), {}, 0}; }
DivisionSpec DivisionSpec::m2(ExactAngle b) { return {Method::M2, std::move(b), {}, 0}; }
DivisionSpec DivisionSpec::m3(Real t) { return {Method::M3, {}, {}, t}; }
DivisionSpec DivisionSpec::m4(ExactAngle g) { return {Method::M4, std::move(g), {}, 0}; }
DivisionSpec DivisionSpec::d(ExactAngle de, ExactAngle ep) { return {Method::D, std::move(de), std::move(ep), 0}; }
DivisionSpec DivisionSpec::d6(Real u, ExactAngle z) { return {Method::D6, std::move(z), {}, u}; }

std::string DivisionSpec::name() const
{
    switch (method) {
    case Method::M3: return "M3(" + fmt_real(ratio) + ")";
    case Method::D: return "D(" + angle.str() + "," + angle2.str() + ")";
    case Method::D6: return "D6(" + fmt_real(ratio) + "," + angle.str() + ")";
    default: return std::string(to_string(method)) + "(" + angle.str() + ")";
    }
}

ExactAngle gamma_star() { return ExactAngle(75) + ExactAngle::atom(Atom::GammaStarExcess); }
ExactAngle epsilon_star() { return ExactAngle(60) + ExactAngle::atom(Atom::EpsStarExcess); }

std::string Census::summary() const
{
    static const std::map<size_t, std::string> names = {
        {3, "triangle"}, {4, "quadrilateral"}, {5, "pentagon"}, {6, "hexagon"},
        {7, "heptagon"}, {8, "octagon"}};
    std::string s;
    for (const auto& c : shapes) {
        if (!s.empty())
            s += ", ";
        auto it = names.find(c.edges);
        s += (it != names.end() ? it->second : std::to_string(c.edges) + "-gon") + "×" +
             std::to_string(c.directTypes) + (c.directTypes == 1 ? "type" : "types");
    }
    return s + "; n=" + std::to_string(n) + ", m=" + std::to_string(m);
}

size_t DivisionResult::hub_piece() const
{
    size_t best = pieces.size();
    for (size_t i = 0; i < pieces.size(); ++i) {
        bool all = true;
        for (size_t j = 0; j < pieces.size() && all; ++j)
            all = i == j || shared_boundary(pieces[i], pieces[j]) > kLengthTol;
        if (all && (best == pieces.size() || pieces[i].size() > pieces[best].size()))
            best = i;
    }
    if (best == pieces.size())
        throw Error("INTERNAL", "no piece touches all others");
    return best;
}

Census piece_census(const DivisionResult& res)
{
    Census c;
    std::map<size_t, CensusShape> by;
    std::vector<const LabeledPolygon*> reps;
    for (const auto& t : res.tileset.tiles)
        reps.push_back(&t.shape);
    std::vector<bool> counted(reps.size(), false);
    for (size_t i = 0; i < reps.size(); ++i) {
        auto& s = by[reps[i]->size()];
        s.edges = reps[i]->size();
        ++s.directTypes;
        ++c.n;
        if (counted[i])
            continue;
        ++s.mirrorTypes;
        ++c.m;
        for (size_t j = i + 1; j < reps.size(); ++j)
            if (!counted[j] && congruent(*reps[i], *reps[j], true) != Congruence::None)
                counted[j] = true;
    }
    for (const auto& p : res.pieces)
        ++by[p.size()].pieces;
    for (auto& [k, v] : by)
        c.shapes.push_back(v);
    return c;
}

DivisionResult divide(const DivisionSpec& spec)
{
    DivisionResult res;
    res.spec = spec;
    Raw raw;
    Real ell = 0;
    switch (spec.method) {
    case Method::M1: raw = raw_m1(spec.angle); break;
    case Method::M2: raw = raw_m2(spec.angle); break;
    case Method::M3: raw = raw_m3(spec.ratio); break;
    case Method::M4: raw = raw_m4(spec.angle); break;
    case Method::D: raw = raw_d(spec.angle, spec.angle2); break;
    case Method::D6: raw = raw_d6(spec.ratio, spec.angle, ell); break;
    }
    for (size_t i = 0; i < raw.pts.size(); ++i)
        res.pieces.push_back(finish_piece(raw.pts[i], raw.basis, raw.labels[i]));

    for (const auto& piece : res.pieces) {
        Placement pl;
        bool found = false;
        for (const auto& t : res.tileset.tiles) {
            auto m = match_congruent(t.shape, piece, false);
            if (m.kind == Congruence::Direct) {
                pl = {t.id, m.iso};
                found = true;
                break;
            }
        }
        if (!found) {
            std::string id = piece.label;
            for (int k = 2; res.tileset.find(id); ++k)
                id = piece.label + "#" + std::to_string(k);
            res.tileset.tiles.push_back({id, piece, false});
            pl = {id, Isometry::identity()};
        }
        res.pieceTile.push_back(pl.tile);
        res.assembly.placements.push_back(pl);
    }
    res.tileset.name = spec.name();

    if (spec.method == Method::M3) {
        // QR against the unit edge X6X7
        const auto& hept = res.pieces[1];
        res.conjectureCase = std::fabs(hept.edge_length(2) - 1.0) > kLengthTol;
    }
    if (spec.method == Method::D6) {
        res.zeta = spec.angle;
        res.eta = ExactAngle(210) - spec.angle;
        res.hexagonCase = *res.zeta == ExactAngle(120) && *res.eta == ExactAngle(90);
    }
    res.census = piece_census(res);
    return res;
}

Patch subdivide_patch(const Patch& tilePatch, const DivisionResult& div)
{
    Patch out;
    for (const auto& pl : tilePatch.placements) {
        if (pl.tile != kTile11Id)
            throw Error("UNKNOWN_TILE", "subdivision expects " + std::string(kTile11Id) + " placements");
        if (pl.iso.mirrored)
            throw Error("MIRRORED_INPUT", "subdivision runs on one-sided patches only");
        for (const auto& a : div.assembly.placements)
            out.placements.push_back({a.tile, pl.iso.compose(a.iso)});
    }
    return out;
}

TileSet tile11_tileset(bool mayReflect)
{
    TileSet ts;
    ts.name = "tile11";
    ts.tiles.push_back({kTile11Id, construct_tile11().shape, mayReflect});
    return ts;
}

} // namespace tf
