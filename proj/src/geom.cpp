#include "tileforge/geom.hpp"

#include <algorithm>
#include <numbers>

namespace tf {

Real deg2rad(Real d) { return d * std::numbers::pi / 180.0; }
Real rad2deg(Real r) { return r * 180.0 / std::numbers::pi; }

Vec unit_dir(Real deg)
{
    // exact values on the 30-degree grid keep tile vertices reproducible
    Real r = std::fmod(deg, 360.0);
    if (r < 0)
        r += 360.0;
    if (r == 0) return {1, 0};
    if (r == 90) return {0, 1};
    if (r == 180) return {-1, 0};
    if (r == 270) return {0, -1};
    Real t = deg2rad(deg);
    return {std::cos(t), std::sin(t)};
}

Vec rotate(Vec v, Real deg)
{
    Vec u = unit_dir(deg);
    return {u.x * v.x - u.y * v.y, u.y * v.x + u.x * v.y};
}

Real direction_deg(Vec v) { return rad2deg(std::atan2(v.y, v.x)); }

std::optional<Vec> line_intersection(Vec p, Vec d, Vec q, Vec e)
{
    Real den = cross(d, e);
    if (std::fabs(den) < 1e-15)
        return std::nullopt;
    Real s = cross(q - p, e) / den;
    return p + d * s;
}

Vec Isometry::apply(Vec p) const
{
    if (mirrored)
        p.y = -p.y;
    return rotate(p, rotation.numeric()) + translation;
}

ExactAngle Isometry::apply_dir(const ExactAngle& deg) const
{
    return (mirrored ? -deg : deg) + rotation;
}

Isometry Isometry::compose(const Isometry& inner) const
{
    Isometry r;
    r.rotation = (rotation + (mirrored ? -inner.rotation : inner.rotation)).mod360();
    r.mirrored = mirrored != inner.mirrored;
    r.translation = apply(inner.translation);
    return r;
}

Isometry Isometry::inverse() const
{
    // p = R M q + t  =>  q = M R^-1 (p - t) = R' M' p + t'
    Isometry r;
    r.mirrored = mirrored;
    r.rotation = (mirrored ? rotation : -rotation).mod360();
    Vec t = rotate(translation, -rotation.numeric());
    if (mirrored)
        t.y = -t.y;
    r.translation = Vec{-t.x, -t.y};
    return r;
}

Real LabeledPolygon::edge_length(size_t i) const
{
    return dist(vertices[i], vertices[(i + 1) % size()]);
}

ExactAngle LabeledPolygon::edge_dir(size_t i) const
{
    if (!dir0)
        throw Error("NO_DIRECTION", "polygon '" + label + "' has no exact edge direction");
    ExactAngle d = *dir0;
    for (size_t k = 1; k <= i; ++k)
        d += ExactAngle(180) - angles[k];
    return d.mod360();
}

Vec LabeledPolygon::centroid() const
{
    Real a = 0, cx = 0, cy = 0;
    const size_t n = size();
    for (size_t i = 0; i < n; ++i) {
        Vec p = vertices[i], q = vertices[(i + 1) % n];
        Real c = cross(p, q);
        a += c;
        cx += (p.x + q.x) * c;
        cy += (p.y + q.y) * c;
    }
    return {cx / (3 * a), cy / (3 * a)};
}

Real signed_area(const std::vector<Vec>& pts)
{
    Real s = 0;
    for (size_t i = 0; i < pts.size(); ++i)
        s += cross(pts[i], pts[(i + 1) % pts.size()]);
    return s / 2;
}

Real area(const LabeledPolygon& p) { return signed_area(p.vertices); }

std::vector<Real> numeric_angles(const std::vector<Vec>& pts)
{
    const size_t n = pts.size();
    std::vector<Real> out(n);
    for (size_t i = 0; i < n; ++i) {
        Vec prev = pts[(i + n - 1) % n] - pts[i];
        Vec next = pts[(i + 1) % n] - pts[i];
        Real t = direction_deg(prev) - direction_deg(next);
        t = std::fmod(t, 360.0);
        if (t < 0)
            t += 360.0;
        out[i] = t;
    }
    return out;
}

namespace {

bool segments_cross(Vec a, Vec b, Vec c, Vec d)
{
    auto side = [](Vec p, Vec q, Vec r) { return cross(q - p, r - p); };
    Real d1 = side(c, d, a), d2 = side(c, d, b), d3 = side(a, b, c), d4 = side(a, b, d);
    const Real eps = 1e-12;
    if (((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
        ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)))
        return true;
    auto on = [&](Vec p, Vec q, Vec r, Real s) {
        return std::fabs(s) <= eps && std::min(p.x, q.x) - eps <= r.x && r.x <= std::max(p.x, q.x) + eps &&
               std::min(p.y, q.y) - eps <= r.y && r.y <= std::max(p.y, q.y) + eps;
    };
    return on(c, d, a, d1) || on(c, d, b, d2) || on(a, b, c, d3) || on(a, b, d, d4);
}

bool is_simple(const std::vector<Vec>& v)
{
    const size_t n = v.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1))
                continue;
            if (segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
                return false;
        }
    return true;
}

} // namespace

LabeledPolygon make_polygon(std::vector<Vec> vertices, std::vector<ExactAngle> angles,
                            std::string label, std::optional<ExactAngle> dir0)
{
    const size_t n = vertices.size();
    if (n < 3)
        throw Error("NOT_SIMPLE", "fewer than three vertices");
    if (angles.size() != n)
        throw Error("ANGLE_MISMATCH", "angle count differs from vertex count");
    if (signed_area(vertices) <= 0)
        throw Error("NOT_SIMPLE", "vertices are not counterclockwise");
    if (!is_simple(vertices))
        throw Error("NOT_SIMPLE", "polygon self-intersects");
    auto num = numeric_angles(vertices);
    for (size_t i = 0; i < n; ++i) {
        if (std::fabs(num[i] - angles[i].numeric()) > kAngleTol)
            throw Error("ANGLE_MISMATCH", "corner " + std::to_string(i) + " measures " +
                                              std::to_string(num[i]) + ", declared " + angles[i].str());
        if (!(angles[i] > ExactAngle(0)) || !(angles[i] < ExactAngle(360)))
            throw Error("ANGLE_MISMATCH", "interior angle out of range");
    }
    if (angle_sum(angles) != ExactAngle(static_cast<long>(180 * (n - 2))))
        throw Error("ANGLE_MISMATCH", "exact angle sum is " + angle_sum(angles).str());

    LabeledPolygon p;
    p.vertices = std::move(vertices);
    p.angles = std::move(angles);
    p.label = std::move(label);
    if (dir0) {
        p.dir0 = dir0->mod360();
    } else {
        Real d = direction_deg(p.vertices[1] - p.vertices[0]);
        std::vector<ExactAngle> basis;
        for (const auto& a : p.angles)
            if (std::find(basis.begin(), basis.end(), a) == basis.end() && !(a.is_rational() && a.q0.get_den() == 1))
                basis.push_back(a);
        if (basis.size() > 3)
            basis.resize(3);
        if (auto s = snap_angle(d, basis, 2, 1e-9))
            p.dir0 = s->mod360();
    }
    if (p.dir0 && std::fabs(std::remainder(p.dir0->numeric() - direction_deg(p.vertices[1] - p.vertices[0]), 360.0)) > 1e-7)
        throw Error("ANGLE_MISMATCH", "declared first edge direction does not match vertices");
    p.chiralityDistinct = !has_line_symmetry(p);
    return p;
}

bool is_convex(const LabeledPolygon& p)
{
    for (const auto& a : p.angles)
        if (!(a < ExactAngle(180)))
            return false;
    return true;
}

LabeledPolygon apply(const Isometry& iso, const LabeledPolygon& p)
{
    LabeledPolygon r;
    r.label = p.label;
    r.chiralityDistinct = p.chiralityDistinct;
    const size_t n = p.size();
    r.vertices.resize(n);
    r.angles.resize(n);
    if (!iso.mirrored) {
        for (size_t i = 0; i < n; ++i) {
            r.vertices[i] = iso.apply(p.vertices[i]);
            r.angles[i] = p.angles[i];
        }
        if (p.dir0)
            r.dir0 = iso.apply_dir(*p.dir0).mod360();
    } else {
        // reverse the order so the image stays counterclockwise
        for (size_t j = 0; j < n; ++j) {
            size_t i = (n - j) % n;
            r.vertices[j] = iso.apply(p.vertices[i]);
            r.angles[j] = p.angles[i];
        }
        if (p.dir0) {
            // new first edge is the image of v0 -> v_{n-1}
            ExactAngle back = p.edge_dir(n - 1) + ExactAngle(180);
            r.dir0 = iso.apply_dir(back).mod360();
        }
    }
    return r;
}

LabeledPolygon reflect(const LabeledPolygon& p)
{
    Isometry m;
    m.mirrored = true;
    return apply(m, p);
}

const char* to_string(Congruence c)
{
    switch (c) {
    case Congruence::Direct: return "DIRECT";
    case Congruence::Mirror: return "MIRROR";
    default: return "NONE";
    }
}

namespace {

std::optional<CongruenceMatch> direct_match(const LabeledPolygon& p, const LabeledPolygon& q)
{
    const size_t n = p.size();
    if (q.size() != n)
        return std::nullopt;
    for (size_t s = 0; s < n; ++s) {
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) {
            size_t j = (i + s) % n;
            ok = p.angles[i] == q.angles[j] && std::fabs(p.edge_length(i) - q.edge_length(j)) <= kLengthTol;
        }
        if (!ok)
            continue;
        CongruenceMatch m;
        m.kind = Congruence::Direct;
        m.shift = s;
        if (p.dir0 && q.dir0) {
            m.iso.rotation = (q.edge_dir(s) - p.edge_dir(0)).mod360();
        } else {
            Real d = direction_deg(q.vertices[(s + 1) % n] - q.vertices[s]) -
                     direction_deg(p.vertices[1] - p.vertices[0]);
            m.iso.rotation = snap_angle(d, {}, 0, 1e-6).value_or(ExactAngle(0));
        }
        m.iso.translation = q.vertices[s] - rotate(p.vertices[0], m.iso.rotation.numeric());
        bool placed = true;
        for (size_t i = 0; i < n && placed; ++i)
            placed = dist(m.iso.apply(p.vertices[i]), q.vertices[(i + s) % n]) < 1e-7;
        if (placed)
            return m;
    }
    return std::nullopt;
}

} // namespace

CongruenceMatch match_congruent(const LabeledPolygon& p, const LabeledPolygon& q, bool allowMirror)
{
    if (auto m = direct_match(p, q))
        return *m;
    if (allowMirror) {
        Isometry flip;
        flip.mirrored = true;
        if (auto m = direct_match(apply(flip, p), q)) {
            CongruenceMatch r = *m;
            r.kind = Congruence::Mirror;
            r.iso = m->iso.compose(flip);
            return r;
        }
    }
    return {};
}

Congruence congruent(const LabeledPolygon& p, const LabeledPolygon& q, bool allowMirror)
{
    return match_congruent(p, q, allowMirror).kind;
}

bool has_line_symmetry(const LabeledPolygon& p)
{
    return direct_match(p, reflect(p)).has_value();
}

} // namespace tf

namespace tf {

Real shared_boundary(const LabeledPolygon& a, const LabeledPolygon& b)
{
    Real total = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        Vec p = a.vertices[i], q = a.vertices[(i + 1) % a.size()];
        Vec d = q - p;
        Real len = norm(d);
        Vec u = d * (1 / len);
        for (size_t j = 0; j < b.size(); ++j) {
            Vec r = b.vertices[j], s = b.vertices[(j + 1) % b.size()];
            if (dot(s - r, u) >= 0)
                continue;
            if (std::fabs(cross(u, r - p)) > 1e-7 || std::fabs(cross(u, s - p)) > 1e-7)
                continue;
            Real t0 = dot(s - p, u), t1 = dot(r - p, u);
            Real lo = std::max<Real>(0, t0), hi = std::min(len, t1);
            if (hi > lo)
                total += hi - lo;
        }
    }
    return total;
}

} // namespace tf
