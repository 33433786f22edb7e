#include "tileforge/search.hpp"

#include "board.hpp"
#include "tileforge/tile11.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_set>

namespace tf {

using namespace board;

ExactAngle VertexStar::sum() const
{
    ExactAngle s;
    for (const auto& c : corners)
        s += c.corner >= 0 ? c.angle : ExactAngle(180);
    return s;
}

std::string VertexStar::str() const
{
    std::string s;
    for (const auto& c : corners) {
        if (!s.empty())
            s += " ";
        s += c.tile + (c.mirrored ? "*" : "");
        if (c.corner >= 0)
            s += "[" + std::to_string(c.corner) + "]=" + c.angle.str();
        else
            s += "(edge " + std::to_string(c.edge) + ")";
    }
    return s + (kind == Kind::Full ? " : 360" : " : 180");
}

const char* to_string(CoronaStatus s)
{
    switch (s) {
    case CoronaStatus::AllCompletionsForced: return "ALL_COMPLETIONS_FORCED";
    case CoronaStatus::NoCompletion: return "NO_COMPLETION";
    case CoronaStatus::PeriodicFound: return "PERIODIC_FOUND";
    case CoronaStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

int thread_count(const SearchPolicy& pol)
{
    if (pol.threads > 0)
        return pol.threads;
    if (const char* env = std::getenv("TILEFORGE_THREADS")) {
        int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

struct Ctx {
    std::atomic<long> expansions{0};
    long maxExpansions = 0;
    Clock::time_point deadline;
    std::atomic<bool> aborted{false};
    std::atomic<bool> stop{false};

    Ctx(const SearchPolicy& pol, long maxExp)
        : maxExpansions(maxExp),
          deadline(Clock::now() + std::chrono::milliseconds(static_cast<long>(pol.timeLimitSeconds * 1000)))
    {
    }
    bool tick()
    {
        if (aborted || stop)
            return false;
        long e = ++expansions;
        if (e > maxExpansions || ((e & 255) == 0 && Clock::now() > deadline)) {
            aborted = true;
            return false;
        }
        return true;
    }
};

enum class Mode { Star, Corona, Growth, Torus };

class Engine {
public:
    Engine(const TileSet& ts, const SearchPolicy& pol, const std::vector<ExactAngle>& extra = {})
        : ts_(&ts), pol_(pol), st_(build_shapes(ts, pol.allowReflection, extra)), b_(st_.ks, st_.shapes)
    {
        for (const auto& id : pol.seedOrder) {
            if (!ts.find(id))
                continue;
            int p = ts.index_of(id);
            for (int m = 0; m < 2; ++m)
                if (st_.variantOf[p][m] >= 0)
                    order_.push_back(st_.variantOf[p][m]);
        }
        for (int s = 0; s < static_cast<int>(st_.shapes.size()); ++s)
            if (std::find(order_.begin(), order_.end(), s) == order_.end())
                order_.push_back(s);
        build_fillable();
    }

    Mode mode = Mode::Corona;
    int radius = 1;
    int anchorNode = -1;
    int growthTarget = 0;
    // torus
    Vec v1, v2;
    Real det = 0, centralArea = 0, centralReach = 0;
    std::vector<Vec> offsets;

    const Board& board() const { return b_; }
    const ShapeTable& table() const { return st_; }
    const TileSet& tileset() const { return *ts_; }

    int shape_of(int proto, bool mirrored) const { return st_.variantOf[proto][mirrored ? 1 : 0]; }

    bool place(Tile t, int layer)
    {
        if (mode == Mode::Torus)
            return place_torus(std::move(t));
        if (!b_.fits(t))
            return false;
        t.layer = layer;
        b_.push(std::move(t));
        pushes_.push_back(1);
        if (!prune_ok(b_.touched())) {
            unplace();
            return false;
        }
        return true;
    }

    void unplace()
    {
        int n = pushes_.back();
        pushes_.pop_back();
        if (mode == Mode::Torus)
            centralArea -= st_.shapes[b_.tiles()[b_.tiles().size() - n].shape].area;
        for (int i = 0; i < n; ++i)
            b_.pop();
    }

    // seed placement without pruning (the seed may be any tile)
    void place_seed(Tile t)
    {
        t.layer = 0;
        if (mode == Mode::Torus) {
            place_torus(std::move(t), false);
            return;
        }
        b_.push(std::move(t));
        pushes_.push_back(1);
    }

    int node_layer(int n) const
    {
        int l = 1 << 30;
        for (const auto& w : b_.nodes()[n].wedges)
            l = std::min(l, b_.tiles()[w.tile].layer);
        return l;
    }

    bool active(int n) const
    {
        switch (mode) {
        case Mode::Star: return n == anchorNode;
        case Mode::Corona: return node_layer(n) <= radius - 1;
        case Mode::Growth: return true;
        case Mode::Torus: return node_layer(n) == 0;
        }
        return false;
    }

    // Open node and gap to fill next; false when every active node is closed.
    bool pick(int& node, Interval& iv) const
    {
        node = -1;
        Real best = 1e300, bestDist = 1e300;
        const auto& ks = b_.keys();
        for (int n = 0; n < static_cast<int>(b_.nodes().size()); ++n) {
            if (b_.closed(n) || !active(n))
                continue;
            Real d = mode == Mode::Growth ? std::round(norm(b_.nodes()[n].p) * 1e6) : 0;
            if (d > bestDist)
                continue;
            for (const auto& g : b_.gaps(n)) {
                Real w = ks.deg(g.width);
                if (d < bestDist || w < best - 1e-9) {
                    best = w;
                    bestDist = d;
                    node = n;
                    iv = g;
                }
            }
        }
        return node >= 0;
    }

    std::vector<Tile> candidates(int node, const Interval& iv) const
    {
        const auto& ks = b_.keys();
        const Vec p = b_.nodes()[node].p;
        const Real wdeg = ks.deg(iv.width);
        bool hasThrough = false;
        for (const auto& w : b_.nodes()[node].wedges)
            hasThrough |= w.corner < 0;
        std::vector<Tile> out;
        for (int s : order_) {
            const Shape& sh = st_.shapes[s];
            for (size_t i = 0; i < sh.ang.size(); ++i) {
                const Key& a = sh.ang[i];
                if (a != iv.width) {
                    if (ks.deg(a) > wdeg - 1e-9)
                        continue;
                    if (!fillable(iv.width - a, hasThrough))
                        continue;
                }
                out.push_back(b_.make_tile_at(s, iv.start - sh.dir[i], static_cast<int>(i), p));
            }
        }
        if (hasThrough || wdeg < 180 - 1e-9)
            return out;
        if (iv.width != ks.half() && !fillable(iv.width - ks.half(), true))
            return out;
        const Vec u = unit_dir(ks.deg(iv.start));
        std::set<std::tuple<int, int64_t, int64_t, int64_t, long long, long long>> seen;
        for (int s : order_) {
            const Shape& sh = st_.shapes[s];
            const int n = static_cast<int>(sh.v.size());
            for (int e = 0; e < n; ++e) {
                const Real len = sh.len[e];
                Vec a = p - u * len, c = p + u * len;
                Box box{std::min(a.x, c.x), std::min(a.y, c.y), std::max(a.x, c.x), std::max(a.y, c.y)};
                Key rot = iv.start - sh.dir[e];
                for (int m : b_.nodes_in_box(box)) {
                    if (m == node)
                        continue;
                    Vec q = b_.nodes()[m].p;
                    if (std::fabs(cross(u, q - p)) > kMergeRadius)
                        continue;
                    Real d = dot(q - p, u);
                    Tile t;
                    if (d > kMergeRadius && d < len - kMergeRadius)
                        t = b_.make_tile_at(s, rot, (e + 1) % n, q);
                    else if (d < -kMergeRadius && d > -len + kMergeRadius)
                        t = b_.make_tile_at(s, rot, e, q);
                    else
                        continue;
                    auto k = std::make_tuple(s, t.rot.a, t.rot.g, t.rot.e, std::llround(t.t.x * 1e6),
                                             std::llround(t.t.y * 1e6));
                    if (seen.insert(k).second)
                        out.push_back(std::move(t));
                }
            }
        }
        return out;
    }

    bool complete() const
    {
        if (mode == Mode::Growth)
            return static_cast<int>(b_.tiles().size()) >= growthTarget;
        return false;
    }

    int layer_for(int node) const { return mode == Mode::Corona ? node_layer(node) + 1 : 0; }

    template <class Visit>
    bool dfs(Visit& visit, Ctx& ctx)
    {
        if (ctx.stop || ctx.aborted)
            return false;
        if (complete())
            return visit(*this);
        int node;
        Interval iv;
        if (!pick(node, iv))
            return visit(*this);
        auto cands = candidates(node, iv);
        const int layer = layer_for(node);
        for (auto& c : cands) {
            if (!ctx.tick())
                return false;
            if (!place(std::move(c), layer))
                continue;
            bool go = dfs(visit, ctx);
            unplace();
            if (!go)
                return false;
        }
        return true;
    }

    Patch to_patch(bool centralOnly = false) const
    {
        Patch out;
        const auto& ks = b_.keys();
        for (const auto& t : b_.tiles()) {
            if (centralOnly && t.layer != 0)
                continue;
            const Shape& sh = st_.shapes[t.shape];
            Isometry iso;
            iso.rotation = ks.angle(t.rot);
            iso.translation = t.t;
            iso.mirrored = sh.mirrored;
            out.placements.push_back({ts_->tiles[sh.proto].id, iso});
        }
        return out;
    }

private:
    void build_fillable()
    {
        const auto& ks = st_.ks;
        std::vector<Key> angles;
        for (const auto& s : st_.shapes)
            for (const Key& a : s.ang)
                if (std::find(angles.begin(), angles.end(), a) == angles.end())
                    angles.push_back(a);
        std::vector<Key> frontier{Key{}};
        while (!frontier.empty()) {
            std::vector<Key> next;
            for (const Key& s : frontier)
                for (const Key& a : angles) {
                    Key t = s + a;
                    if (ks.deg(t) <= 360 + 1e-9 && sums_.insert(t).second)
                        next.push_back(t);
                }
            if (sums_.size() > 2'000'000)
                throw Error("RESOURCE_LIMIT", "too many angle sums");
            frontier = std::move(next);
        }
        withThrough_ = sums_;
        withThrough_.insert(ks.half());
        for (const Key& s : sums_)
            if (ks.deg(s) <= 180 + 1e-9)
                withThrough_.insert(s + ks.half());
    }

    bool fillable(const Key& g, bool hasThrough) const
    {
        return hasThrough ? sums_.count(g) > 0 : withThrough_.count(g) > 0;
    }

    bool prune_ok(const std::vector<int>& nodes) const
    {
        for (int n : nodes) {
            bool hasThrough = false;
            for (const auto& w : b_.nodes()[n].wedges)
                hasThrough |= w.corner < 0;
            for (const auto& g : b_.gaps(n))
                if (!fillable(g.width, hasThrough))
                    return false;
        }
        return true;
    }

    bool place_torus(Tile t, bool check = true)
    {
        const Shape& sh = st_.shapes[t.shape];
        if (check) {
            if (centralArea + sh.area > det * (1 + 1e-9))
                return false;
            Vec c{0, 0};
            for (Vec v : t.v)
                c = c + v;
            c = c * (1.0 / static_cast<Real>(t.v.size()));
            if (norm(c) > centralReach)
                return false;
            if (!b_.fits(t))
                return false;
            // the tile against its own translates
            for (Vec off : offsets) {
                if (norm(off) < 1e-12)
                    continue;
                Tile o = b_.make_tile(t.shape, t.rot, t.t + off);
                if (!o.box.overlaps(t.box, 0))
                    continue;
                for (const auto& pa : t.parts)
                    for (const auto& pb : o.parts)
                        if (convex_overlap(pa, pb, 1e-7))
                            return false;
            }
        }
        std::vector<int> touched;
        int pushed = 0;
        const int shape = t.shape;
        const Key rot = t.rot;
        const Vec tr = t.t;
        t.layer = 0;
        b_.push(std::move(t));
        ++pushed;
        touched = b_.touched();
        for (Vec off : offsets) {
            if (norm(off) < 1e-12)
                continue;
            Tile o = b_.make_tile(shape, rot, tr + off);
            o.layer = 1;
            b_.push(std::move(o));
            ++pushed;
            const auto& tt = b_.touched();
            touched.insert(touched.end(), tt.begin(), tt.end());
        }
        pushes_.push_back(pushed);
        centralArea += sh.area;
        if (check && !prune_ok(touched)) {
            unplace();
            return false;
        }
        return true;
    }

    const TileSet* ts_;
    SearchPolicy pol_;
    ShapeTable st_;
    Board b_;
    std::vector<int> order_;
    std::unordered_set<Key, KeyHash> sums_, withThrough_;
    std::vector<int> pushes_;
};

// Runs the DFS, splitting the first branching level across threads. Each
// branch gets its own visitor; visitors are returned in branch order.
template <class Visitor, class Make>
std::vector<Visitor> run_search(Engine& root, Ctx& ctx, int threads, Make make)
{
    int node;
    Interval iv;
    if (root.complete() || !root.pick(node, iv)) {
        std::vector<Visitor> out{make()};
        out[0](root);
        return out;
    }
    auto cands = root.candidates(node, iv);
    const int layer = root.layer_for(node);
    std::vector<Visitor> out;
    for (size_t i = 0; i < cands.size(); ++i)
        out.push_back(make());
    std::atomic<size_t> next{0};
    auto worker = [&](Engine e) {
        for (size_t i = next++; i < cands.size(); i = next++) {
            if (!ctx.tick())
                return;
            if (!e.place(cands[i], layer))
                continue;
            bool go = e.dfs(out[i], ctx);
            e.unplace();
            if (!go && !ctx.aborted)
                ctx.stop = true;
        }
    };
    threads = std::max(1, std::min<int>(threads, static_cast<int>(cands.size())));
    if (threads == 1) {
        worker(root);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker, root);
        for (auto& th : pool)
            th.join();
    }
    return out;
}

// Direct rotational symmetries of a shape as vertex shifts.
std::vector<int> corner_orbit_rep(const Shape& s)
{
    const int n = static_cast<int>(s.v.size());
    std::vector<int> shifts;
    for (int k = 1; k < n; ++k) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            ok = s.ang[i] == s.ang[(i + k) % n] && std::fabs(s.len[i] - s.len[(i + k) % n]) < kLengthTol;
        if (ok)
            shifts.push_back(k);
    }
    std::vector<int> rep(n);
    for (int i = 0; i < n; ++i) {
        rep[i] = i;
        for (int k : shifts)
            rep[i] = std::min(rep[i], (i + k) % n);
    }
    return rep;
}

struct CoronaVisitor;

// The star's tiles admit a surrounding layer.
bool star_extends(const Engine& star, long budget, const SearchPolicy& pol);

struct StarVisitor {
    std::vector<std::pair<std::string, VertexStar>> stars;
    const SearchPolicy* pol = nullptr;
    long unresolved = 0;
    bool operator()(const Engine& e)
    {
        if (pol && pol->starExtension > 0 && !star_extends(e, pol->maxPlacements / 10, *pol))
            return true;
        const Board& b = e.board();
        const auto& nd = b.nodes()[e.anchorNode];
        const auto& ks = b.keys();
        std::vector<const Wedge*> ws;
        for (const auto& w : nd.wedges)
            ws.push_back(&w);
        std::sort(ws.begin(), ws.end(), [&](const Wedge* x, const Wedge* y) {
            return ks.deg(ks.dir(x->start)) < ks.deg(ks.dir(y->start));
        });
        VertexStar star;
        std::vector<std::string> tokens;
        for (const Wedge* w : ws) {
            const Tile& t = b.tiles()[w->tile];
            const Shape& sh = e.table().shapes[t.shape];
            StarCorner c;
            c.tile = e.tileset().tiles[sh.proto].id;
            c.mirrored = sh.mirrored;
            c.corner = w->corner;
            c.edge = w->edge;
            if (w->corner >= 0) {
                c.angle = ks.angle(sh.ang[w->corner]);
                c.corner = corner_orbit_rep(sh)[w->corner];
            } else {
                star.kind = VertexStar::Kind::Flat;
            }
            tokens.push_back(c.tile + (c.mirrored ? "*" : "") + (c.corner >= 0 ? "c" + std::to_string(c.corner)
                                                                                 : "e" + std::to_string(c.edge)));
            star.corners.push_back(c);
        }
        // canonical rotation of the cyclic token sequence
        size_t best = 0;
        const size_t n = tokens.size();
        auto rotated = [&](size_t s) {
            std::string out;
            for (size_t i = 0; i < n; ++i)
                out += tokens[(s + i) % n] + "|";
            return out;
        };
        std::string key = rotated(0);
        for (size_t s = 1; s < n; ++s)
            if (auto r = rotated(s); r < key) {
                key = r;
                best = s;
            }
        std::rotate(star.corners.begin(), star.corners.begin() + static_cast<long>(best), star.corners.end());
        // witness: tiles with a wedge at the point
        Patch all = e.to_patch();
        std::set<int> used;
        for (const Wedge* w : ws)
            used.insert(w->tile);
        for (int t : used)
            star.witness.placements.push_back(all.placements[t]);
        stars.emplace_back(key, std::move(star));
        return true;
    }
};

// Cluster partition of a completed patch into copies of `cluster`.
class ClusterCheck {
public:
    // the cluster's outer boundary is the Tile(1,1) outline
    explicit ClusterCheck(const Patch& cluster)
        : cluster_(cluster), parts_(convex_parts(construct_tile11().shape.vertices))
    {
    }

    bool partition(const Patch& p) const
    {
        struct Choice {
            Isometry g;
            std::vector<std::vector<Vec>> parts;
        };
        std::vector<std::vector<Choice>> options(p.size());
        for (size_t i = 0; i < p.size(); ++i) {
            const auto& pl = p.placements[i];
            for (const auto& slot : cluster_.placements) {
                if (slot.tile != pl.tile || slot.iso.mirrored != pl.iso.mirrored)
                    continue;
                Choice c;
                c.g = pl.iso.compose(slot.iso.inverse());
                for (const auto& part : parts_) {
                    std::vector<Vec> q;
                    for (Vec v : part)
                        q.push_back(c.g.apply(v));
                    c.parts.push_back(std::move(q));
                }
                options[i].push_back(std::move(c));
            }
            if (options[i].empty())
                return false;
        }
        std::vector<const Choice*> chosen(p.size(), nullptr);
        auto same = [](const Isometry& a, const Isometry& b) {
            return a.mirrored == b.mirrored && (a.rotation - b.rotation).mod360() == ExactAngle(0) &&
                   dist(a.translation, b.translation) < 1e-6;
        };
        auto disjoint = [](const Choice& a, const Choice& b) {
            for (const auto& pa : a.parts)
                for (const auto& pb : b.parts)
                    if (convex_overlap(pa, pb, 1e-6))
                        return false;
            return true;
        };
        std::function<bool(size_t)> rec = [&](size_t i) {
            if (i == p.size())
                return true;
            for (const auto& c : options[i]) {
                bool ok = true;
                for (size_t j = 0; j < i && ok; ++j)
                    ok = same(c.g, chosen[j]->g) || disjoint(c, *chosen[j]);
                if (!ok)
                    continue;
                chosen[i] = &c;
                if (rec(i + 1))
                    return true;
            }
            return false;
        };
        return rec(0);
    }

private:
    Patch cluster_;
    std::vector<std::vector<Vec>> parts_;
};

bool corona_extends(const Engine& done, int layers, long budget, const SearchPolicy& pol);

struct CoronaVisitor {
    const ClusterCheck* check = nullptr;
    const SearchPolicy* pol = nullptr;
    bool stopAtFirst = false;
    long completions = 0, dead = 0;
    std::optional<Patch> first, failed;
    bool operator()(const Engine& e)
    {
        if (check && !check->partition(e.to_patch())) {
            if (pol && pol->forcedExtension > 0 &&
                !corona_extends(e, pol->forcedExtension, pol->maxPlacements, *pol)) {
                ++dead;
                return true;
            }
            ++completions;
            failed = e.to_patch();
            return false;
        }
        ++completions;
        if (!first)
            first = e.to_patch();
        return !stopAtFirst;
    }
};

bool corona_extends(const Engine& done, int layers, long budget, const SearchPolicy& pol)
{
    // one layer at a time: a dead end close in is cheaper to prove
    for (int l = 1; l <= layers; ++l) {
        Engine e = done;
        e.radius += l;
        Ctx ctx(pol, budget);
        CoronaVisitor v;
        v.stopAtFirst = true;
        e.dfs(v, ctx);
        if (ctx.aborted)
            return true;
        if (v.completions == 0)
            return false;
    }
    return true;
}

bool star_extends(const Engine& star, long budget, const SearchPolicy& pol)
{
    Engine e = star;
    e.mode = Mode::Corona;
    e.radius = pol.starExtension;
    Ctx ctx(pol, budget);
    CoronaVisitor v;
    v.stopAtFirst = true;
    e.dfs(v, ctx);
    // an exhausted budget keeps the star
    return v.completions > 0 || ctx.aborted;
}

struct FirstVisitor {
    std::optional<Patch> patch;
    bool operator()(const Engine& e)
    {
        patch = e.to_patch(e.mode == Mode::Torus);
        return false;
    }
};

Real elapsed_since(Clock::time_point t0)
{
    return std::chrono::duration<Real>(Clock::now() - t0).count();
}

Tile seed_tile(const Engine& e, const Placement& seed)
{
    return tile_from_placement(e.board(), e.table(), e.tileset(), seed);
}

std::vector<ExactAngle> rotations_of(const Placement& p) { return {p.iso.rotation}; }

// Lattice bases for a grown patch. Same-orientation translation differences
// come first, then differences between vertices of the patch.
std::vector<std::pair<Vec, Vec>> lattice_candidates(const Engine& e, const SearchPolicy& pol)
{
    const auto& tiles = e.board().tiles();
    auto add = [](std::vector<Vec>& diffs, Vec d) {
        if (d.x < -1e-9 || (std::fabs(d.x) <= 1e-9 && d.y < 0))
            d = d * -1;
        if (norm(d) < 1e-6)
            return;
        for (Vec o : diffs)
            if (dist(o, d) < 1e-6)
                return;
        diffs.push_back(d);
    };
    auto shortest = [](std::vector<Vec>& diffs, size_t n) {
        std::sort(diffs.begin(), diffs.end(), [](Vec a, Vec b) { return norm(a) < norm(b); });
        if (diffs.size() > n)
            diffs.resize(n);
    };
    std::vector<Vec> same, vert;
    for (size_t i = 0; i < tiles.size(); ++i)
        for (size_t j = i + 1; j < tiles.size(); ++j)
            if (tiles[i].shape == tiles[j].shape && tiles[i].rot == tiles[j].rot)
                add(same, tiles[j].t - tiles[i].t);
    shortest(same, 40);
    Real diam = 0;
    for (const auto& s : e.table().shapes)
        diam = std::max(diam, s.diameter);
    const auto& nodes = e.board().nodes();
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
            if (dist(nodes[i].p, nodes[j].p) <= 3 * diam)
                add(vert, nodes[j].p - nodes[i].p);
    shortest(vert, 400);

    std::vector<Real> areas;
    for (const auto& s : e.table().shapes)
        if (std::find_if(areas.begin(), areas.end(), [&](Real a) { return std::fabs(a - s.area) < 1e-9; }) ==
            areas.end())
            areas.push_back(s.area);
    // |det| must be a small non-negative integer combination of tile areas
    std::function<bool(size_t, Real, int)> representable = [&](size_t k, Real rest, int budget) {
        if (std::fabs(rest) < 1e-7)
            return true;
        if (k == areas.size() || rest < 0 || budget == 0)
            return false;
        for (int c = 0; c <= budget && c * areas[k] <= rest + 1e-7; ++c)
            if (representable(k + 1, rest - c * areas[k], budget - c))
                return true;
        return false;
    };

    struct Cand {
        Vec a, b;
        Real det, len;
    };
    std::vector<Cand> all;
    auto collect = [&](const std::vector<Vec>& diffs, int maxTiles) {
        std::vector<Cand> cands;
        for (size_t i = 0; i < diffs.size(); ++i)
            for (size_t j = i + 1; j < diffs.size(); ++j) {
                Vec a = diffs[i], b = diffs[j];
                Real d = std::fabs(cross(a, b));
                if (d < 1e-6 || !representable(0, d, maxTiles))
                    continue;
                for (int it = 0; it < 100; ++it) {
                    if (dot(a, a) > dot(b, b))
                        std::swap(a, b);
                    Real mu = std::round(dot(a, b) / dot(a, a));
                    if (mu == 0)
                        break;
                    b = b - a * mu;
                }
                bool dup = false;
                for (const auto* list : {&all, &cands})
                    for (const auto& c : *list) {
                        if (dup || std::fabs(c.det - d) > 1e-7)
                            continue;
                        // same lattice: b and a are integer combinations of c.a, c.b
                        auto in = [&](Vec v) {
                            Real x = cross(v, c.b) / cross(c.a, c.b), y = cross(c.a, v) / cross(c.a, c.b);
                            return std::fabs(x - std::round(x)) < 1e-6 && std::fabs(y - std::round(y)) < 1e-6;
                        };
                        dup = in(a) && in(b);
                    }
                if (!dup)
                    cands.push_back({a, b, d, norm(a) + norm(b)});
            }
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
            if (std::fabs(x.det - y.det) > 1e-7)
                return x.det < y.det;
            return x.len < y.len;
        });
        // round robin over cell areas so one area cannot fill the quota
        std::vector<std::vector<Cand>> byDet;
        for (const auto& c : cands) {
            if (byDet.empty() || std::fabs(byDet.back().front().det - c.det) > 1e-7)
                byDet.emplace_back();
            byDet.back().push_back(c);
        }
        for (size_t k = 0;; ++k) {
            bool any = false;
            for (const auto& g : byDet)
                if (k < g.size()) {
                    all.push_back(g[k]);
                    any = true;
                }
            if (!any)
                break;
        }
    };
    collect(same, 16);
    collect(vert, 8);
    std::vector<std::pair<Vec, Vec>> out;
    for (const auto& c : all) {
        if (static_cast<int>(out.size()) >= pol.maxLatticeCandidates)
            break;
        out.emplace_back(c.a, c.b);
    }
    return out;
}

// Representatives of the patch tiles modulo the lattice.
std::optional<Patch> extract_unit(const TileSet& ts, const Patch& p, Vec v1, Vec v2)
{
    const Real det = cross(v1, v2);
    Patch unit;
    std::vector<std::tuple<std::string, bool, std::string, long long, long long>> seen;
    Real area_sum = 0;
    for (const auto& pl : p.placements) {
        LabeledPolygon s = placed_shape(ts, pl);
        Vec c = s.centroid();
        Real a = cross(c, v2) / det, b = cross(v1, c) / det;
        a -= std::floor(a);
        b -= std::floor(b);
        auto key = std::make_tuple(pl.tile, pl.iso.mirrored, pl.iso.rotation.mod360().str(),
                                   std::llround(a * 1e6) % 1000000, std::llround(b * 1e6) % 1000000);
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            continue;
        seen.push_back(key);
        unit.placements.push_back(pl);
        area_sum += area(s);
    }
    if (std::fabs(area_sum - std::fabs(det)) > 1e-8 * std::fabs(det))
        return std::nullopt;
    try {
        if (verify_periodic(ts, unit, v1, v2))
            return unit;
    } catch (const Error&) {
    }
    return std::nullopt;
}

std::optional<Patch> torus_search(const TileSet& ts, const SearchPolicy& pol, const Placement& seed, Vec v1, Vec v2,
                                  long budget)
{
    Engine e(ts, pol, rotations_of(seed));
    e.mode = Mode::Torus;
    e.v1 = v1;
    e.v2 = v2;
    e.det = std::fabs(cross(v1, v2));
    Real diam = 0;
    for (const auto& s : e.table().shapes)
        diam = std::max(diam, s.diameter);
    e.centralReach = norm(v1) + norm(v2) + diam;
    const Real window = 2 * e.centralReach + diam;
    const Real h1 = e.det / norm(v2), h2 = e.det / norm(v1);
    const int k1 = static_cast<int>(std::ceil(window / h1)) + 1, k2 = static_cast<int>(std::ceil(window / h2)) + 1;
    for (int i = -k1; i <= k1; ++i)
        for (int j = -k2; j <= k2; ++j) {
            Vec off = v1 * i + v2 * j;
            if (norm(off) <= window)
                e.offsets.push_back(off);
        }
    e.place_seed(seed_tile(e, seed));
    Ctx ctx(pol, budget);
    FirstVisitor v;
    e.dfs(v, ctx);
    if (!v.patch)
        return std::nullopt;
    try {
        if (verify_periodic(ts, *v.patch, v1, v2))
            return v.patch;
    } catch (const Error&) {
    }
    return std::nullopt;
}

} // namespace

std::vector<VertexStar> enumerate_vertex_stars(const TileSet& ts, const SearchPolicy& policy,
                                               std::optional<std::pair<std::string, int>> anchor)
{
    for (const auto& t : ts.tiles)
        if (!is_convex(t.shape))
            throw Error("NOT_CONVEX", "vertex stars need convex tiles; '" + t.id + "' is not");
    std::vector<std::pair<int, int>> anchors; // (shape, corner)
    Engine probe(ts, policy);
    if (anchor) {
        int p = ts.index_of(anchor->first);
        int n = static_cast<int>(ts.tiles[p].shape.size());
        if (anchor->second < 0 || anchor->second >= n)
            throw Error("OUT_OF_DOMAIN", "corner index out of range");
        anchors.emplace_back(probe.shape_of(p, false), anchor->second);
    } else {
        for (int s = 0; s < static_cast<int>(probe.table().shapes.size()); ++s) {
            auto rep = corner_orbit_rep(probe.table().shapes[s]);
            for (int c = 0; c < static_cast<int>(rep.size()); ++c)
                if (rep[c] == c)
                    anchors.emplace_back(s, c);
        }
    }
    std::map<std::string, VertexStar> found;
    for (auto [s, c] : anchors) {
        Engine e(ts, policy);
        e.mode = Mode::Star;
        e.place_seed(e.board().make_tile_at(s, Key{}, c, Vec{0, 0}));
        e.anchorNode = e.board().find_node(Vec{0, 0});
        Ctx ctx(policy, policy.maxPlacements);
        auto res = run_search<StarVisitor>(e, ctx, thread_count(policy), [&] {
            StarVisitor v;
            v.pol = &policy;
            return v;
        });
        if (ctx.aborted)
            throw Error("RESOURCE_LIMIT", "star enumeration hit the placement bound");
        for (auto& v : res)
            for (auto& [k, star] : v.stars) {
                found.emplace(k, std::move(star));
                if (static_cast<long>(found.size()) > policy.maxStars)
                    throw Error("EXPLOSION", "more than " + std::to_string(policy.maxStars) + " vertex stars");
            }
    }
    std::vector<VertexStar> out;
    for (auto& [k, s] : found)
        out.push_back(std::move(s));
    return out;
}

namespace {

CoronaReport corona_search(const TileSet& ts, const Placement& seed, const SearchPolicy& policy,
                           const ClusterCheck* check, bool stopAtFirst)
{
    const auto t0 = Clock::now();
    CoronaReport rep;
    rep.radius = policy.maxRadius;
    Engine e(ts, policy, rotations_of(seed));
    e.mode = Mode::Corona;
    e.radius = policy.maxRadius;
    e.place_seed(seed_tile(e, seed));
    Ctx ctx(policy, policy.maxPlacements);
    auto res = run_search<CoronaVisitor>(e, ctx, thread_count(policy), [&] {
        CoronaVisitor v;
        v.check = check;
        v.pol = &policy;
        v.stopAtFirst = stopAtFirst;
        return v;
    });
    for (auto& v : res) {
        rep.completions += v.completions;
        if (!rep.witness && v.failed)
            rep.witness = v.failed;
    }
    if (!rep.witness)
        for (auto& v : res)
            if (v.first) {
                rep.witness = v.first;
                break;
            }
    rep.expansions = ctx.expansions;
    rep.elapsed = elapsed_since(t0);
    bool failed = false;
    for (auto& v : res)
        failed |= v.failed.has_value();
    if (failed) {
        rep.status = CoronaStatus::Inconclusive;
        rep.note = "a completion does not partition into clusters";
        if (check && policy.forcedExtension > 0)
            rep.note += " and admits " + std::to_string(policy.forcedExtension) + " further layers";
    } else if (ctx.aborted) {
        rep.status = CoronaStatus::Inconclusive;
        rep.note = "search bound reached after " + std::to_string(rep.expansions) + " placements";
    } else if (rep.completions == 0) {
        rep.status = CoronaStatus::NoCompletion;
        rep.note = "no corona of radius " + std::to_string(policy.maxRadius);
    } else if (check) {
        rep.status = CoronaStatus::AllCompletionsForced;
        rep.note = std::to_string(rep.completions) + " completions, all partition into clusters";
    } else {
        rep.status = CoronaStatus::Inconclusive;
        rep.note = std::to_string(rep.completions) + " completions";
    }
    return rep;
}

} // namespace

Patch grow_patch(const TileSet& ts, int tiles, const SearchPolicy& policy)
{
    Engine e(ts, policy);
    e.mode = Mode::Growth;
    e.growthTarget = tiles;
    e.place_seed(e.board().make_tile(e.shape_of(0, false), Key{}, Vec{0, 0}));
    Ctx ctx(policy, policy.maxPlacements);
    FirstVisitor v;
    e.dfs(v, ctx);
    if (!v.patch)
        throw Error("RESOURCE_LIMIT", "could not grow " + std::to_string(tiles) + " tiles");
    return *v.patch;
}

CoronaReport find_periodic(const TileSet& ts, const SearchPolicy& policy)
{
    const auto t0 = Clock::now();
    CoronaReport rep;
    long spent = 0;
    // a larger patch gives more difference vectors
    for (size_t k = 0; k < 2 * ts.tiles.size() && !rep.unit; ++k) {
        const size_t p = k % ts.tiles.size();
        const int round = static_cast<int>(k / ts.tiles.size());
        TileSet seeded = ts;
        // grow from this prototile
        std::rotate(seeded.tiles.begin(), seeded.tiles.begin() + static_cast<long>(p), seeded.tiles.end());
        Engine e(seeded, policy);
        e.mode = Mode::Growth;
        e.growthTarget = policy.growthTiles << round;
        Placement seed{seeded.tiles[0].id, Isometry{}};
        e.place_seed(seed_tile(e, seed));
        Ctx ctx(policy, policy.maxPlacements / 4);
        FirstVisitor v;
        // keep the engine's board: re-run to the first growth and inspect it
        struct Keep {
            Engine* target;
            std::optional<Patch>* out;
            std::vector<std::pair<Vec, Vec>>* lattices;
            const SearchPolicy* pol;
            bool operator()(const Engine& en)
            {
                *out = en.to_patch();
                *lattices = lattice_candidates(en, *pol);
                return false;
            }
        };
        std::optional<Patch> grown;
        std::vector<std::pair<Vec, Vec>> lattices;
        Keep keep{&e, &grown, &lattices, &policy};
        e.dfs(keep, ctx);
        spent += ctx.expansions;
        if (!grown)
            continue;
        for (auto [v1, v2] : lattices) {
            if (elapsed_since(t0) > policy.timeLimitSeconds)
                break;
            if (auto unit = extract_unit(ts, *grown, v1, v2)) {
                rep.unit = unit;
                rep.lattice = std::make_pair(v1, v2);
                break;
            }
            long budget = std::max<long>(20'000, policy.maxPlacements / (4 * std::max(1, policy.maxLatticeCandidates)));
            if (auto unit = torus_search(ts, policy, seed, v1, v2, budget)) {
                rep.unit = unit;
                rep.lattice = std::make_pair(v1, v2);
                break;
            }
        }
    }
    rep.expansions = spent;
    rep.elapsed = elapsed_since(t0);
    rep.unitTiles = ts;
    if (rep.unit) {
        rep.status = CoronaStatus::PeriodicFound;
        rep.note = "translation unit of " + std::to_string(rep.unit->size()) + " tiles";
        rep.witness = rep.unit;
    } else {
        rep.status = CoronaStatus::Inconclusive;
        rep.note = "no translation unit found within the bounds";
    }
    return rep;
}

CoronaReport grow_coronas(const TileSet& ts, const Placement& seed, const SearchPolicy& policy, const Patch* cluster)
{
    std::optional<ClusterCheck> check;
    if (cluster)
        check.emplace(*cluster);
    CoronaReport rep = corona_search(ts, seed, policy, check ? &*check : nullptr, false);
    if (rep.status == CoronaStatus::Inconclusive && rep.completions > 0 && !rep.note.starts_with("search bound")) {
        CoronaReport per = find_periodic(ts, policy);
        if (per.status == CoronaStatus::PeriodicFound) {
            per.completions = rep.completions;
            per.radius = rep.radius;
            per.elapsed += rep.elapsed;
            per.expansions += rep.expansions;
            return per;
        }
    }
    return rep;
}

CoronaReport check_forced_assembly(const TileSet& ts, const DivisionResult& div, const SearchPolicy& policy)
{
    const auto t0 = Clock::now();
    ClusterCheck check(div.assembly);
    // the hub piece first, then every other prototile
    std::vector<std::string> seeds{div.pieceTile[div.hub_piece()]};
    for (const auto& t : ts.tiles)
        if (std::find(seeds.begin(), seeds.end(), t.id) == seeds.end())
            seeds.push_back(t.id);
    CoronaReport total;
    total.radius = policy.maxRadius;
    total.status = CoronaStatus::AllCompletionsForced;
    for (const auto& id : seeds) {
        Placement seed{id, Isometry{}};
        CoronaReport r = corona_search(ts, seed, policy, &check, false);
        total.completions += r.completions;
        total.expansions += r.expansions;
        if (r.status == CoronaStatus::AllCompletionsForced)
            continue;
        total.status = r.status;
        total.witness = r.witness;
        total.note = id + ": " + r.note;
        if (r.status == CoronaStatus::Inconclusive && r.witness && r.note.starts_with("a completion")) {
            // a free-standing arrangement: look for a periodic tiling
            for (const auto& t : ts.tiles) {
                CoronaReport per = find_periodic(ts.subset({t.id}), policy);
                if (per.status == CoronaStatus::PeriodicFound) {
                    per.completions = total.completions;
                    per.radius = total.radius;
                    per.note = "{" + t.id + "} tiles periodically; " + per.note;
                    per.elapsed = elapsed_since(t0);
                    return per;
                }
            }
            CoronaReport per = find_periodic(ts, policy);
            if (per.status == CoronaStatus::PeriodicFound) {
                per.completions = total.completions;
                per.radius = total.radius;
                per.elapsed = elapsed_since(t0);
                return per;
            }
        }
        break;
    }
    if (total.status == CoronaStatus::AllCompletionsForced)
        total.note = std::to_string(total.completions) + " completions over " + std::to_string(seeds.size()) +
                     " seeds partition into clusters";
    total.elapsed = elapsed_since(t0);
    return total;
}

CoronaReport subset_tiling_probe(const TileSet& ts, const std::vector<std::string>& subset, const SearchPolicy& policy)
{
    if (subset.empty())
        throw Error("OUT_OF_DOMAIN", "empty subset");
    const auto t0 = Clock::now();
    TileSet sub = ts.subset(subset);
    CoronaReport rep;
    rep.radius = policy.maxRadius;
    long completions = 0;
    size_t stuck = 0;
    for (const auto& t : sub.tiles) {
        CoronaReport r = corona_search(sub, Placement{t.id, Isometry{}}, policy, nullptr, true);
        rep.expansions += r.expansions;
        completions += r.completions;
        stuck += r.status == CoronaStatus::NoCompletion;
    }
    // no tile of the subset can be surrounded
    if (stuck == sub.tiles.size()) {
        rep.status = CoronaStatus::NoCompletion;
        rep.note = "no tile has a corona of radius " + std::to_string(policy.maxRadius);
        rep.completions = 0;
        rep.elapsed = elapsed_since(t0);
        return rep;
    }
    CoronaReport per = find_periodic(sub, policy);
    per.radius = policy.maxRadius;
    per.completions = completions;
    per.expansions += rep.expansions;
    per.elapsed = elapsed_since(t0);
    return per;
}

} // namespace tf
