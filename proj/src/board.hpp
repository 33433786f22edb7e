#pragma once

// Incremental placement board shared by validation and search: exact
// angle keys, meeting-point clustering, wedge bookkeeping, overlap tests.

#include "tileforge/geom.hpp"
#include "tileforge/patch.hpp"

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace tf::board {

// Angle as integers over a common denominator: (a + g*G + e*E) / den deg.
struct Key {
    int64_t a = 0, g = 0, e = 0;
    friend bool operator==(const Key& x, const Key& y) { return x.a == y.a && x.g == y.g && x.e == y.e; }
    friend bool operator!=(const Key& x, const Key& y) { return !(x == y); }
    Key operator+(const Key& o) const { return {a + o.a, g + o.g, e + o.e}; }
    Key operator-(const Key& o) const { return {a - o.a, g - o.g, e - o.e}; }
    Key operator-() const { return {-a, -g, -e}; }
};

struct KeyHash {
    size_t operator()(const Key& k) const
    {
        return std::hash<int64_t>()(k.a * 1000003 + k.g * 7919 + k.e);
    }
};

class KeySpace {
public:
    KeySpace() = default;
    explicit KeySpace(const std::vector<ExactAngle>& samples);
    void include(const ExactAngle& a);

    Key key(const ExactAngle& a) const;
    ExactAngle angle(const Key& k) const;
    Real deg(const Key& k) const;
    // direction normalised to [0, 360) numerically
    Key dir(const Key& k) const;
    Key full() const { return {360 * den_, 0, 0}; }
    Key half() const { return {180 * den_, 0, 0}; }
    int64_t den() const { return den_; }

private:
    int64_t den_ = 1;
    Real G_ = 0, E_ = 0;
};

struct Box {
    Real x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool overlaps(const Box& o, Real eps) const
    {
        return x0 <= o.x1 + eps && o.x0 <= x1 + eps && y0 <= o.y1 + eps && o.y0 <= y1 + eps;
    }
};

// A prototile in one handedness, canonical coordinates.
struct Shape {
    int proto = 0;
    bool mirrored = false;
    std::vector<Vec> v;
    std::vector<Key> ang, dir; // dir[i]: edge v_i -> v_{i+1}
    std::vector<Real> len;
    std::vector<std::vector<Vec>> parts; // convex pieces
    Real diameter = 0;
    Real area = 0;
};

struct Tile {
    int shape = 0;
    Key rot;
    Vec t;
    std::vector<Vec> v;
    std::vector<Key> dir;
    std::vector<std::vector<Vec>> parts;
    Box box;
    int layer = 0;
};

struct Wedge {
    int tile = 0;
    int corner = -1; // -1: the point lies inside an edge of `tile`
    int edge = -1;
    Key start, width;
};

struct Node {
    Vec p;
    std::vector<Wedge> wedges;
    Key covered;
};

struct Interval {
    Key start, width;
};

std::vector<std::vector<Vec>> convex_parts(const std::vector<Vec>& poly);

// Penetration depth of two convex polygons along the best separating axis;
// <= eps means they only touch.
bool convex_overlap(const std::vector<Vec>& a, const std::vector<Vec>& b, Real eps);

class Board {
public:
    Board(KeySpace ks, std::vector<Shape> shapes);

    const KeySpace& keys() const { return ks_; }
    const std::vector<Shape>& shapes() const { return shapes_; }
    const std::vector<Tile>& tiles() const { return tiles_; }
    const std::vector<Node>& nodes() const { return nodes_; }

    Tile make_tile(int shape, const Key& rot, Vec t) const;
    // Tile whose vertex `corner` lands on p.
    Tile make_tile_at(int shape, const Key& rot, int corner, Vec p) const;

    // Interior-disjointness and wedge compatibility with the board.
    bool fits(const Tile& c) const;

    void push(Tile c);
    void pop();
    // Nodes created or given new wedges by the most recent push.
    const std::vector<int>& touched() const { return frames_.back().touched; }

    int find_node(Vec p) const;
    std::vector<int> nodes_in_box(const Box& b) const;
    std::vector<int> tiles_in_box(const Box& b) const;
    // Uncovered angular intervals at a node, ccw order from the first wedge.
    std::vector<Interval> gaps(int node) const;
    bool closed(int node) const { return nodes_[node].covered == ks_.full(); }
    // Interiors of the two angular intervals intersect.
    bool clash(const Key& s1, const Key& w1, const Key& s2, const Key& w2) const;

private:
    struct Frame {
        int tile = 0;
        size_t nodesBefore = 0;
        std::vector<int> wedgeNodes;
        std::vector<int> touched;
    };

    static int64_t cell_key(int64_t cx, int64_t cy) { return cx * 73856093LL ^ cy * 19349663LL; }
    void index_tile(int id, bool add);
    bool wedge_clash(const Node& n, const Key& start, const Key& width) const;
    int add_node(Vec p);
    void add_wedge(int node, const Wedge& w);

    KeySpace ks_;
    std::vector<Shape> shapes_;
    std::vector<Tile> tiles_;
    std::vector<Node> nodes_;
    std::vector<Frame> frames_;
    Real nodeCell_ = 0.25, tileCell_ = 1.0;
    std::unordered_map<int64_t, std::vector<int>> nodeGrid_, tileGrid_;
};

// Shapes for every prototile (and mirrored variant when reflection is
// allowed) of a tile set. `variantOf[proto][mirrored]` gives the index or -1.
struct ShapeTable {
    KeySpace ks;
    std::vector<Shape> shapes;
    std::vector<std::array<int, 2>> variantOf;
};

ShapeTable build_shapes(const TileSet& ts, bool allowReflection, const std::vector<ExactAngle>& extraAngles = {});

// Rotation key and translation of an isometry placing shape `s`.
Tile tile_from_placement(const Board& b, const ShapeTable& st, const TileSet& ts, const Placement& p);

} // namespace tf::board
