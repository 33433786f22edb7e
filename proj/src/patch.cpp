#include "tileforge/patch.hpp"

#include "board.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <sstream>

namespace tf {

const Prototile* TileSet::find(const std::string& id) const
{
    for (const auto& t : tiles)
        if (t.id == id)
            return &t;
    return nullptr;
}

const Prototile& TileSet::at(const std::string& id) const
{
    if (const Prototile* t = find(id))
        return *t;
    throw Error("UNKNOWN_TILE", "tile '" + id + "' is not in tile set '" + name + "'");
}

int TileSet::index_of(const std::string& id) const
{
    for (size_t i = 0; i < tiles.size(); ++i)
        if (tiles[i].id == id)
            return static_cast<int>(i);
    throw Error("UNKNOWN_TILE", "tile '" + id + "' is not in tile set '" + name + "'");
}

TileSet TileSet::subset(const std::vector<std::string>& ids) const
{
    TileSet out;
    out.name = name + "{";
    for (size_t i = 0; i < ids.size(); ++i) {
        out.tiles.push_back(at(ids[i]));
        out.name += (i ? "," : "") + ids[i];
    }
    out.name += "}";
    return out;
}

TileSet TileSet::with_reflection(const std::string& id, bool mayReflect) const
{
    TileSet out = *this;
    index_of(id);
    for (auto& t : out.tiles)
        if (t.id == id)
            t.mayReflect = mayReflect;
    return out;
}

LabeledPolygon placed_shape(const TileSet& ts, const Placement& p)
{
    return apply(p.iso, ts.at(p.tile).shape);
}

void check_policy(const TileSet& ts, const Patch& p)
{
    for (size_t i = 0; i < p.placements.size(); ++i) {
        const auto& pl = p.placements[i];
        if (pl.iso.mirrored && !ts.at(pl.tile).mayReflect)
            throw Error("POLICY_VIOLATION", "placement " + std::to_string(i) + " mirrors '" + pl.tile +
                                                "' which may not be reflected");
    }
}

namespace {

using board::Board;
using board::Key;

struct Built {
    board::ShapeTable st;
    std::unique_ptr<Board> b;
};

Built build_board(const TileSet& ts, const std::vector<Placement>& pls)
{
    std::vector<ExactAngle> rots;
    for (const auto& p : pls)
        rots.push_back(p.iso.rotation);
    Built out;
    out.st = board::build_shapes(ts, true, rots);
    out.b = std::make_unique<Board>(out.st.ks, out.st.shapes);
    for (const auto& p : pls)
        out.b->push(board::tile_from_placement(*out.b, out.st, ts, p));
    return out;
}

bool tiles_overlap(const board::Tile& a, const board::Tile& b)
{
    if (!a.box.overlaps(b.box, 0))
        return false;
    for (const auto& pa : a.parts)
        for (const auto& pb : b.parts)
            if (board::convex_overlap(pa, pb, 1e-7))
                return true;
    return false;
}

bool node_clash(const Board& b, const board::Node& n)
{
    for (size_t i = 0; i < n.wedges.size(); ++i)
        for (size_t j = i + 1; j < n.wedges.size(); ++j)
            if (b.clash(n.wedges[i].start, n.wedges[i].width, n.wedges[j].start, n.wedges[j].width))
                return true;
    return false;
}

Real point_segment_distance(Vec p, Vec a, Vec b)
{
    Vec d = b - a;
    Real l2 = dot(d, d);
    Real s = l2 > 0 ? std::clamp(dot(p - a, d) / l2, 0.0, 1.0) : 0.0;
    return dist(p, a + d * s);
}

// Next node after `from` along edge `edge` of tile `tile`.
int next_on_edge(const Board& b, int from, int tile, int edge)
{
    const auto& t = b.tiles()[tile];
    Vec a = b.nodes()[from].p;
    Vec e = t.v[(edge + 1) % t.v.size()];
    Vec d = e - a;
    Real len = norm(d);
    if (len < kMergeRadius)
        return -1;
    Vec u = d * (1 / len);
    board::Box box{std::min(a.x, e.x), std::min(a.y, e.y), std::max(a.x, e.x), std::max(a.y, e.y)};
    int best = -1;
    Real bs = 1e300;
    for (int id : b.nodes_in_box(box)) {
        if (id == from)
            continue;
        Vec p = b.nodes()[id].p;
        if (std::fabs(cross(u, p - a)) > kMergeRadius)
            continue;
        Real s = dot(p - a, u);
        if (s > kMergeRadius && s < bs) {
            bs = s;
            best = id;
        }
    }
    return best;
}

// Boundary loops of the union, interior on the left. Each loop is a node
// sequence; outer loops have positive signed area.
std::vector<std::vector<int>> boundary_loops(const Board& b)
{
    const auto& ks = b.keys();
    struct Step {
        int node;
        Key in;  // gap start ray
        Key out; // gap end ray
        bool used = false;
    };
    std::vector<Step> steps;
    std::vector<std::vector<int>> byNode(b.nodes().size());
    for (size_t n = 0; n < b.nodes().size(); ++n)
        for (const auto& g : b.gaps(static_cast<int>(n))) {
            if (b.nodes()[n].wedges.empty())
                continue;
            byNode[n].push_back(static_cast<int>(steps.size()));
            steps.push_back({static_cast<int>(n), ks.dir(g.start), ks.dir(g.start + g.width)});
        }
    std::vector<std::vector<int>> loops;
    for (size_t s0 = 0; s0 < steps.size(); ++s0) {
        if (steps[s0].used)
            continue;
        std::vector<int> loop;
        int cur = static_cast<int>(s0);
        bool closedLoop = false;
        for (size_t guard = 0; guard <= steps.size(); ++guard) {
            Step& st = steps[cur];
            if (st.used) {
                closedLoop = cur == static_cast<int>(s0);
                break;
            }
            st.used = true;
            loop.push_back(st.node);
            const auto& nd = b.nodes()[st.node];
            const board::Wedge* w = nullptr;
            for (const auto& cand : nd.wedges)
                if (ks.dir(cand.start) == st.out)
                    w = &cand;
            if (!w)
                break;
            int edge = w->corner >= 0 ? w->corner : w->edge;
            int nx = next_on_edge(b, st.node, w->tile, edge);
            if (nx < 0)
                break;
            Key back = ks.dir(st.out + ks.half());
            int found = -1;
            for (int k : byNode[nx])
                if (steps[k].in == back)
                    found = k;
            if (found < 0)
                break;
            cur = found;
        }
        if (closedLoop && loop.size() >= 2)
            loops.push_back(std::move(loop));
    }
    return loops;
}

} // namespace

ValidationReport validate_patch(const TileSet& ts, const Patch& p)
{
    for (const auto& pl : p.placements)
        ts.at(pl.tile);
    check_policy(ts, p);
    ValidationReport rep;
    rep.edgeToEdge = true;
    if (p.empty())
        return rep;

    Built built = build_board(ts, p.placements);
    const Board& b = *built.b;
    const auto& tiles = b.tiles();
    const auto& ks = b.keys();

    for (size_t i = 0; i < tiles.size(); ++i)
        for (int j : b.tiles_in_box(tiles[i].box))
            if (static_cast<size_t>(j) > i && tiles_overlap(tiles[i], tiles[j]))
                rep.overlaps.push_back("placements " + std::to_string(i) + " and " + std::to_string(j) +
                                       " overlap");

    Real diameter = 0;
    for (const auto& s : b.shapes())
        diameter = std::max(diameter, s.diameter);

    for (size_t n = 0; n < b.nodes().size(); ++n) {
        const auto& nd = b.nodes()[n];
        for (const auto& w : nd.wedges)
            if (w.corner < 0)
                rep.edgeToEdge = false;
        std::ostringstream where;
        where.precision(12);
        where << "(" << nd.p.x << ", " << nd.p.y << ")";
        Real sum = ks.deg(nd.covered);
        if (node_clash(b, nd) || sum > 360 + 1e-9)
            rep.badStars.push_back("corners overlap at " + where.str());
        else if (std::fabs(sum - 360) <= 1e-9 && nd.covered != ks.full())
            rep.badStars.push_back("angle sum at " + where.str() + " is not exactly 360");
    }
    rep.meetingPoints = b.nodes().size();

    auto loops = boundary_loops(b);
    std::vector<std::vector<int>> outer, holes;
    for (auto& l : loops) {
        std::vector<Vec> pts;
        for (int n : l)
            pts.push_back(b.nodes()[n].p);
        Real a = signed_area(pts);
        if (a > 1e-12)
            outer.push_back(l);
        else if (a < -1e-12)
            holes.push_back(l);
    }
    std::set<int> reported;
    for (const auto& h : holes)
        for (int n : h) {
            if (b.closed(n) || reported.count(n))
                continue;
            Vec p = b.nodes()[n].p;
            Real d = 1e300;
            for (const auto& o : outer)
                for (size_t k = 0; k < o.size(); ++k)
                    d = std::min(d, point_segment_distance(p, b.nodes()[o[k]].p,
                                                           b.nodes()[o[(k + 1) % o.size()]].p));
            if (d > diameter) {
                reported.insert(n);
                std::ostringstream os;
                os.precision(12);
                os << "uncovered angle at (" << p.x << ", " << p.y << ")";
                rep.gaps.push_back(os.str());
            }
        }

    for (size_t i = 0; i < p.placements.size(); ++i) {
        LabeledPolygon a = placed_shape(ts, p.placements[i]);
        for (int j : b.tiles_in_box(tiles[i].box)) {
            if (static_cast<size_t>(j) <= i)
                continue;
            Real len = shared_boundary(a, placed_shape(ts, p.placements[j]));
            if (len > kLengthTol)
                rep.contacts.push_back({i, static_cast<size_t>(j), len});
        }
    }

    rep.ok = rep.overlaps.empty() && rep.gaps.empty() && rep.badStars.empty();
    return rep;
}

bool verify_periodic(const TileSet& ts, const Patch& p, Vec v1, Vec v2)
{
    const Real det = cross(v1, v2);
    if (std::fabs(det) < 1e-9)
        throw Error("DEGENERATE_LATTICE", "translation vectors are linearly dependent");
    check_policy(ts, p);
    if (p.empty())
        return false;

    // Lagrange reduction: the result must not depend on the chosen basis.
    for (int it = 0; it < 100; ++it) {
        if (dot(v1, v1) > dot(v2, v2))
            std::swap(v1, v2);
        Real mu = std::round(dot(v1, v2) / dot(v1, v1));
        if (mu == 0)
            break;
        v2 = v2 - v1 * mu;
    }
    const Real cellArea = std::fabs(det);

    Real unitArea = 0, diameter = 0;
    std::vector<Placement> unit;
    for (const auto& pl : p.placements) {
        LabeledPolygon s = placed_shape(ts, pl);
        unitArea += area(s);
        Vec c = s.centroid();
        Real a = cross(c, v2) / det, bb = cross(v1, c) / det;
        Placement q = pl;
        q.iso.translation = q.iso.translation - v1 * std::floor(a) - v2 * std::floor(bb);
        unit.push_back(q);
        for (Vec x : s.vertices)
            for (Vec y : s.vertices)
                diameter = std::max(diameter, dist(x, y));
    }
    if (std::fabs(unitArea - cellArea) > 1e-8 * cellArea)
        return false;

    // every translate that can touch a tile of the central copy
    const Real reach = 2 * diameter + norm(v1) + norm(v2);
    const Real h1 = cellArea / norm(v2), h2 = cellArea / norm(v1);
    const int k1 = static_cast<int>(std::ceil(reach / h1)) + 1;
    const int k2 = static_cast<int>(std::ceil(reach / h2)) + 1;
    std::vector<Placement> all;
    size_t central = 0;
    for (int pass = 0; pass < 2; ++pass)
        for (int i = -k1; i <= k1; ++i)
            for (int j = -k2; j <= k2; ++j) {
                if ((i == 0 && j == 0) != (pass == 0))
                    continue;
                Vec off = v1 * i + v2 * j;
                if (pass == 1 && norm(off) > reach + norm(v1) + norm(v2))
                    continue;
                for (auto q : unit) {
                    q.iso.translation = q.iso.translation + off;
                    all.push_back(q);
                }
                if (pass == 0)
                    central = all.size();
            }

    Built built = build_board(ts, all);
    const Board& b = *built.b;
    const auto& tiles = b.tiles();
    for (size_t i = 0; i < central; ++i)
        for (int j : b.tiles_in_box(tiles[i].box))
            if (static_cast<size_t>(j) != i && tiles_overlap(tiles[i], tiles[j]))
                return false;
    for (size_t i = 0; i < central; ++i)
        for (Vec v : tiles[i].v) {
            int n = b.find_node(v);
            if (n < 0 || !b.closed(n) || node_clash(b, b.nodes()[n]))
                return false;
        }
    return true;
}

} // namespace tf
