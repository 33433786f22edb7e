#include "board.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tf::board {

namespace {

int64_t to_i64(const mpz_class& z)
{
    if (!z.fits_slong_p())
        throw Error("RESOURCE_LIMIT", "angle denominator too large for the search");
    return z.get_si();
}

bool on_segment_interior(Vec p, Vec a, Vec b, Real tol)
{
    Vec d = b - a;
    Real len = norm(d);
    if (len < tol)
        return false;
    Vec u = d * (1 / len);
    if (std::fabs(cross(u, p - a)) > tol)
        return false;
    Real s = dot(p - a, u);
    return s > tol && s < len - tol;
}

} // namespace

KeySpace::KeySpace(const std::vector<ExactAngle>& samples)
{
    G_ = atom_degrees(Atom::GammaStarExcess);
    E_ = atom_degrees(Atom::EpsStarExcess);
    for (const auto& a : samples)
        include(a);
}

void KeySpace::include(const ExactAngle& a)
{
    if (G_ == 0) {
        G_ = atom_degrees(Atom::GammaStarExcess);
        E_ = atom_degrees(Atom::EpsStarExcess);
    }
    mpz_class d = den_;
    for (const Rational* q : {&a.q0, &a.q1, &a.q2})
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q->get_den_mpz_t());
    den_ = to_i64(d);
    if (den_ > 1000000000LL)
        throw Error("RESOURCE_LIMIT", "angle denominator too large for the search");
}

Key KeySpace::key(const ExactAngle& a) const
{
    auto conv = [&](const Rational& q) {
        mpz_class num = q.get_num() * den_;
        if (num % q.get_den() != 0)
            throw Error("INTERNAL", "angle " + a.str() + " outside the key space");
        return to_i64(num / q.get_den());
    };
    return {conv(a.q0), conv(a.q1), conv(a.q2)};
}

ExactAngle KeySpace::angle(const Key& k) const
{
    return ExactAngle(Rational(k.a, den_), Rational(k.g, den_), Rational(k.e, den_));
}

Real KeySpace::deg(const Key& k) const
{
    Real v = static_cast<Real>(k.a);
    if (k.g)
        v += static_cast<Real>(k.g) * G_;
    if (k.e)
        v += static_cast<Real>(k.e) * E_;
    return v / static_cast<Real>(den_);
}

Key KeySpace::dir(const Key& k) const
{
    Key r = k;
    const int64_t full = 360 * den_;
    Real v = deg(r);
    int64_t turns = static_cast<int64_t>(std::floor(v / 360.0));
    r.a -= turns * full;
    if (deg(r) < 0)
        r.a += full;
    else if (deg(r) >= 360.0)
        r.a -= full;
    return r;
}

std::vector<std::vector<Vec>> convex_parts(const std::vector<Vec>& input)
{
    std::vector<Vec> poly;
    const size_t n0 = input.size();
    for (size_t i = 0; i < n0; ++i) {
        Vec a = input[(i + n0 - 1) % n0], b = input[i], c = input[(i + 1) % n0];
        if (std::fabs(cross(b - a, c - b)) > 1e-12)
            poly.push_back(b);
    }
    auto convex = [](const std::vector<Vec>& p) {
        for (size_t i = 0; i < p.size(); ++i) {
            Vec a = p[i], b = p[(i + 1) % p.size()], c = p[(i + 2) % p.size()];
            if (cross(b - a, c - b) < -1e-12)
                return false;
        }
        return true;
    };
    if (convex(poly))
        return {poly};

    // ear clipping
    std::vector<std::vector<Vec>> parts;
    std::vector<Vec> rest = poly;
    while (rest.size() > 3) {
        bool clipped = false;
        const size_t n = rest.size();
        for (size_t i = 0; i < n && !clipped; ++i) {
            Vec a = rest[(i + n - 1) % n], b = rest[i], c = rest[(i + 1) % n];
            if (cross(b - a, c - b) <= 1e-12)
                continue;
            bool empty = true;
            for (size_t j = 0; j < n && empty; ++j) {
                if (j == i || j == (i + 1) % n || j == (i + n - 1) % n)
                    continue;
                Vec p = rest[j];
                empty = !(cross(b - a, p - a) > 1e-12 && cross(c - b, p - b) > 1e-12 && cross(a - c, p - c) > 1e-12);
            }
            if (!empty)
                continue;
            parts.push_back({a, b, c});
            rest.erase(rest.begin() + static_cast<long>(i));
            clipped = true;
        }
        if (!clipped)
            throw Error("NOT_SIMPLE", "ear clipping failed");
    }
    parts.push_back(rest);

    // merge neighbours while the union stays convex
    auto same = [](Vec p, Vec q) { return dist(p, q) < 1e-12; };
    for (bool merged = true; merged;) {
        merged = false;
        for (size_t i = 0; i < parts.size() && !merged; ++i)
            for (size_t j = i + 1; j < parts.size() && !merged; ++j) {
                auto& A = parts[i];
                auto& B = parts[j];
                for (size_t ai = 0; ai < A.size() && !merged; ++ai)
                    for (size_t bi = 0; bi < B.size() && !merged; ++bi) {
                        Vec a0 = A[ai], a1 = A[(ai + 1) % A.size()];
                        if (!same(a0, B[(bi + 1) % B.size()]) || !same(a1, B[bi]))
                            continue;
                        std::vector<Vec> u;
                        for (size_t k = 0; k < A.size(); ++k)
                            u.push_back(A[(ai + 1 + k) % A.size()]);
                        u.pop_back(); // a0 follows from B
                        for (size_t k = 0; k + 1 < B.size(); ++k)
                            u.push_back(B[(bi + 1 + k) % B.size()]);
                        if (convex(u)) {
                            A = u;
                            parts.erase(parts.begin() + static_cast<long>(j));
                            merged = true;
                        }
                    }
            }
    }
    return parts;
}

bool convex_overlap(const std::vector<Vec>& a, const std::vector<Vec>& b, Real eps)
{
    auto separated = [&](const std::vector<Vec>& p) {
        for (size_t i = 0; i < p.size(); ++i) {
            Vec e = p[(i + 1) % p.size()] - p[i];
            Real l = norm(e);
            if (l < 1e-15)
                continue;
            Vec nrm{-e.y / l, e.x / l};
            Real amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
            for (Vec v : a) {
                Real s = dot(v, nrm);
                amin = std::min(amin, s);
                amax = std::max(amax, s);
            }
            for (Vec v : b) {
                Real s = dot(v, nrm);
                bmin = std::min(bmin, s);
                bmax = std::max(bmax, s);
            }
            if (std::min(amax, bmax) - std::max(amin, bmin) <= eps)
                return true;
        }
        return false;
    };
    return !separated(a) && !separated(b);
}

Board::Board(KeySpace ks, std::vector<Shape> shapes) : ks_(std::move(ks)), shapes_(std::move(shapes))
{
    Real d = 0;
    for (const auto& s : shapes_)
        d = std::max(d, s.diameter);
    tileCell_ = std::max<Real>(d, 0.5);
}

Tile Board::make_tile(int shape, const Key& rot, Vec t) const
{
    const Shape& s = shapes_[shape];
    Tile c;
    c.shape = shape;
    c.rot = ks_.dir(rot);
    c.t = t;
    Real r = ks_.deg(c.rot);
    c.v.reserve(s.v.size());
    Box b{1e300, 1e300, -1e300, -1e300};
    for (Vec p : s.v) {
        Vec q = rotate(p, r) + t;
        c.v.push_back(q);
        b.x0 = std::min(b.x0, q.x);
        b.y0 = std::min(b.y0, q.y);
        b.x1 = std::max(b.x1, q.x);
        b.y1 = std::max(b.y1, q.y);
    }
    c.box = b;
    for (const Key& d : s.dir)
        c.dir.push_back(ks_.dir(d + c.rot));
    for (const auto& part : s.parts) {
        std::vector<Vec> q;
        for (Vec p : part)
            q.push_back(rotate(p, r) + t);
        c.parts.push_back(std::move(q));
    }
    return c;
}

Tile Board::make_tile_at(int shape, const Key& rot, int corner, Vec p) const
{
    Real r = ks_.deg(ks_.dir(rot));
    Vec t = p - rotate(shapes_[shape].v[corner], r);
    return make_tile(shape, rot, t);
}

std::vector<int> Board::nodes_in_box(const Box& b) const
{
    std::vector<int> out;
    int64_t cx0 = static_cast<int64_t>(std::floor((b.x0 - 1e-6) / nodeCell_));
    int64_t cx1 = static_cast<int64_t>(std::floor((b.x1 + 1e-6) / nodeCell_));
    int64_t cy0 = static_cast<int64_t>(std::floor((b.y0 - 1e-6) / nodeCell_));
    int64_t cy1 = static_cast<int64_t>(std::floor((b.y1 + 1e-6) / nodeCell_));
    for (int64_t cx = cx0; cx <= cx1; ++cx)
        for (int64_t cy = cy0; cy <= cy1; ++cy) {
            auto it = nodeGrid_.find(cell_key(cx, cy));
            if (it == nodeGrid_.end())
                continue;
            for (int id : it->second) {
                Vec p = nodes_[id].p;
                if (p.x >= b.x0 - 1e-6 && p.x <= b.x1 + 1e-6 && p.y >= b.y0 - 1e-6 && p.y <= b.y1 + 1e-6)
                    out.push_back(id);
            }
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> Board::tiles_in_box(const Box& b) const
{
    std::vector<int> out;
    int64_t cx0 = static_cast<int64_t>(std::floor((b.x0 - 1e-6) / tileCell_));
    int64_t cx1 = static_cast<int64_t>(std::floor((b.x1 + 1e-6) / tileCell_));
    int64_t cy0 = static_cast<int64_t>(std::floor((b.y0 - 1e-6) / tileCell_));
    int64_t cy1 = static_cast<int64_t>(std::floor((b.y1 + 1e-6) / tileCell_));
    for (int64_t cx = cx0; cx <= cx1; ++cx)
        for (int64_t cy = cy0; cy <= cy1; ++cy) {
            auto it = tileGrid_.find(cell_key(cx, cy));
            if (it == tileGrid_.end())
                continue;
            for (int id : it->second)
                if (tiles_[id].box.overlaps(b, 1e-6))
                    out.push_back(id);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int Board::find_node(Vec p) const
{
    Box b{p.x - kMergeRadius, p.y - kMergeRadius, p.x + kMergeRadius, p.y + kMergeRadius};
    int best = -1;
    Real bd = kMergeRadius;
    for (int id : nodes_in_box(b)) {
        Real d = dist(nodes_[id].p, p);
        if (d <= bd) {
            bd = d;
            best = id;
        }
    }
    return best;
}

bool Board::clash(const Key& s1, const Key& w1, const Key& s2, const Key& w2) const
{
    Key d1 = ks_.dir(s1 - s2);
    if (d1 == Key{})
        return true;
    if (d1 != w2 && ks_.deg(d1) < ks_.deg(w2) - 1e-9)
        return true;
    Key d2 = ks_.dir(s2 - s1);
    return d2 != w1 && ks_.deg(d2) < ks_.deg(w1) - 1e-9;
}

bool Board::wedge_clash(const Node& n, const Key& start, const Key& width) const
{
    for (const auto& w : n.wedges)
        if (clash(start, width, w.start, w.width))
            return true;
    return false;
}

bool Board::fits(const Tile& c) const
{
    for (int id : tiles_in_box(c.box)) {
        const Tile& o = tiles_[id];
        for (const auto& pa : c.parts)
            for (const auto& pb : o.parts)
                if (convex_overlap(pa, pb, 1e-7))
                    return false;
    }
    const Shape& s = shapes_[c.shape];
    const size_t n = c.v.size();
    for (size_t i = 0; i < n; ++i) {
        int node = find_node(c.v[i]);
        if (node >= 0) {
            if (wedge_clash(nodes_[node], c.dir[i], s.ang[i]))
                return false;
            continue;
        }
        // a new point on the edge of a placed tile
        Box pb{c.v[i].x, c.v[i].y, c.v[i].x, c.v[i].y};
        for (int id : tiles_in_box(pb)) {
            const Tile& o = tiles_[id];
            for (size_t e = 0; e < o.v.size(); ++e)
                if (on_segment_interior(c.v[i], o.v[e], o.v[(e + 1) % o.v.size()], kMergeRadius)) {
                    Node tmp;
                    tmp.wedges.push_back({id, -1, static_cast<int>(e), o.dir[e], ks_.half()});
                    if (wedge_clash(tmp, c.dir[i], s.ang[i]))
                        return false;
                }
        }
    }
    for (int id : nodes_in_box(c.box)) {
        const Node& nd = nodes_[id];
        for (size_t e = 0; e < n; ++e)
            if (on_segment_interior(nd.p, c.v[e], c.v[(e + 1) % n], kMergeRadius) &&
                wedge_clash(nd, c.dir[e], ks_.half()))
                return false;
    }
    return true;
}

int Board::add_node(Vec p)
{
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({p, {}, {}});
    int64_t cx = static_cast<int64_t>(std::floor(p.x / nodeCell_));
    int64_t cy = static_cast<int64_t>(std::floor(p.y / nodeCell_));
    nodeGrid_[cell_key(cx, cy)].push_back(id);
    return id;
}

void Board::add_wedge(int node, const Wedge& w)
{
    Node& nd = nodes_[node];
    nd.wedges.push_back(w);
    nd.covered = nd.covered + w.width;
    frames_.back().wedgeNodes.push_back(node);
    frames_.back().touched.push_back(node);
}

void Board::index_tile(int id, bool add)
{
    const Box& b = tiles_[id].box;
    int64_t cx0 = static_cast<int64_t>(std::floor(b.x0 / tileCell_));
    int64_t cx1 = static_cast<int64_t>(std::floor(b.x1 / tileCell_));
    int64_t cy0 = static_cast<int64_t>(std::floor(b.y0 / tileCell_));
    int64_t cy1 = static_cast<int64_t>(std::floor(b.y1 / tileCell_));
    for (int64_t cx = cx0; cx <= cx1; ++cx)
        for (int64_t cy = cy0; cy <= cy1; ++cy) {
            auto& v = tileGrid_[cell_key(cx, cy)];
            if (add)
                v.push_back(id);
            else
                v.pop_back();
        }
}

void Board::push(Tile c)
{
    const int id = static_cast<int>(tiles_.size());
    frames_.push_back({id, nodes_.size(), {}, {}});
    const Shape& s = shapes_[c.shape];
    const size_t n = c.v.size();
    std::vector<int> corners(n);
    for (size_t i = 0; i < n; ++i) {
        int node = find_node(c.v[i]);
        if (node < 0) {
            node = add_node(c.v[i]);
            Box pb{c.v[i].x, c.v[i].y, c.v[i].x, c.v[i].y};
            for (int tid : tiles_in_box(pb)) {
                const Tile& o = tiles_[tid];
                for (size_t e = 0; e < o.v.size(); ++e)
                    if (on_segment_interior(c.v[i], o.v[e], o.v[(e + 1) % o.v.size()], kMergeRadius))
                        add_wedge(node, {tid, -1, static_cast<int>(e), o.dir[e], ks_.half()});
            }
        }
        corners[i] = node;
        add_wedge(node, {id, static_cast<int>(i), -1, c.dir[i], s.ang[i]});
    }
    for (int nid : nodes_in_box(c.box)) {
        if (std::find(corners.begin(), corners.end(), nid) != corners.end())
            continue;
        for (size_t e = 0; e < n; ++e)
            if (on_segment_interior(nodes_[nid].p, c.v[e], c.v[(e + 1) % n], kMergeRadius))
                add_wedge(nid, {id, -1, static_cast<int>(e), c.dir[e], ks_.half()});
    }
    tiles_.push_back(std::move(c));
    index_tile(id, true);
    auto& t = frames_.back().touched;
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
}

void Board::pop()
{
    Frame f = std::move(frames_.back());
    frames_.pop_back();
    index_tile(f.tile, false);
    tiles_.pop_back();
    for (auto it = f.wedgeNodes.rbegin(); it != f.wedgeNodes.rend(); ++it) {
        Node& nd = nodes_[*it];
        nd.covered = nd.covered - nd.wedges.back().width;
        nd.wedges.pop_back();
    }
    while (nodes_.size() > f.nodesBefore) {
        Vec p = nodes_.back().p;
        int64_t cx = static_cast<int64_t>(std::floor(p.x / nodeCell_));
        int64_t cy = static_cast<int64_t>(std::floor(p.y / nodeCell_));
        nodeGrid_[cell_key(cx, cy)].pop_back();
        nodes_.pop_back();
    }
}

std::vector<Interval> Board::gaps(int node) const
{
    const Node& nd = nodes_[node];
    std::vector<Interval> out;
    if (nd.wedges.empty()) {
        out.push_back({Key{}, ks_.full()});
        return out;
    }
    if (nd.covered == ks_.full())
        return out;
    std::vector<std::pair<Real, const Wedge*>> order;
    for (const auto& w : nd.wedges)
        order.push_back({ks_.deg(ks_.dir(w.start)), &w});
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    const size_t n = order.size();
    for (size_t i = 0; i < n; ++i) {
        const Wedge& w = *order[i].second;
        const Wedge& nx = *order[(i + 1) % n].second;
        Key end = w.start + w.width;
        Key g = n == 1 ? ks_.full() - w.width : ks_.dir(nx.start - end);
        if (g != Key{})
            out.push_back({ks_.dir(end), g});
    }
    return out;
}

ShapeTable build_shapes(const TileSet& ts, bool allowReflection, const std::vector<ExactAngle>& extraAngles)
{
    ShapeTable st;
    std::vector<ExactAngle> samples = extraAngles;
    samples.push_back(ExactAngle(180));
    for (const auto& t : ts.tiles) {
        if (!t.shape.dir0)
            throw Error("NO_DIRECTION", "prototile '" + t.id + "' lacks exact edge directions");
        for (size_t i = 0; i < t.shape.size(); ++i) {
            samples.push_back(t.shape.angles[i]);
            samples.push_back(t.shape.edge_dir(i));
        }
    }
    st.ks = KeySpace(samples);
    for (size_t p = 0; p < ts.tiles.size(); ++p) {
        std::array<int, 2> idx{-1, -1};
        for (int m = 0; m < 2; ++m) {
            if (m == 1 && !(allowReflection && ts.tiles[p].mayReflect))
                continue;
            const LabeledPolygon poly = m ? reflect(ts.tiles[p].shape) : ts.tiles[p].shape;
            Shape s;
            s.proto = static_cast<int>(p);
            s.mirrored = m == 1;
            s.v = poly.vertices;
            for (size_t i = 0; i < poly.size(); ++i) {
                s.ang.push_back(st.ks.key(poly.angles[i]));
                s.dir.push_back(st.ks.dir(st.ks.key(poly.edge_dir(i))));
                s.len.push_back(poly.edge_length(i));
            }
            s.parts = convex_parts(poly.vertices);
            for (Vec a : poly.vertices)
                for (Vec b : poly.vertices)
                    s.diameter = std::max(s.diameter, dist(a, b));
            s.area = area(poly);
            idx[m] = static_cast<int>(st.shapes.size());
            st.shapes.push_back(std::move(s));
        }
        st.variantOf.push_back(idx);
    }
    return st;
}

Tile tile_from_placement(const Board& b, const ShapeTable& st, const TileSet& ts, const Placement& p)
{
    int proto = ts.index_of(p.tile);
    int s = st.variantOf[proto][p.iso.mirrored ? 1 : 0];
    if (s < 0)
        throw Error("POLICY_VIOLATION", "mirrored placement of '" + p.tile + "'");
    return b.make_tile(s, b.keys().key(p.iso.rotation), p.iso.translation);
}

} // namespace tf::board
