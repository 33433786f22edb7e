#pragma once

#include "tileforge/angles.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace tf {

using Real = double;

constexpr Real kLengthTol = 1e-9;
constexpr Real kAngleTol = 1e-9; // degrees
constexpr Real kMergeRadius = 1e-7;

struct Vec {
    Real x = 0, y = 0;
};

inline Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
inline Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
inline Vec operator*(Vec a, Real s) { return {a.x * s, a.y * s}; }
inline Vec operator*(Real s, Vec a) { return {a.x * s, a.y * s}; }
inline Real dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }
inline Real cross(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }
inline Real norm(Vec a) { return std::hypot(a.x, a.y); }
inline Real dist(Vec a, Vec b) { return norm(a - b); }

Real deg2rad(Real d);
Real rad2deg(Real r);
Vec unit_dir(Real deg);
Vec rotate(Vec v, Real deg);
// atan2 in degrees, in (-180, 180].
Real direction_deg(Vec v);
// Intersection of lines p + s*d and q + u*e; nullopt when parallel.
std::optional<Vec> line_intersection(Vec p, Vec d, Vec q, Vec e);

// p -> R(rotation) * M^mirrored * p + translation, M = diag(1, -1).
struct Isometry {
    ExactAngle rotation;
    Vec translation;
    bool mirrored = false;

    static Isometry identity() { return {}; }
    Vec apply(Vec p) const;
    // Direction of the image of a direction `deg`.
    ExactAngle apply_dir(const ExactAngle& deg) const;
    // (*this)(inner(p))
    Isometry compose(const Isometry& inner) const;
    Isometry inverse() const;
};

struct LabeledPolygon {
    std::vector<Vec> vertices;       // counterclockwise
    std::vector<ExactAngle> angles;  // interior angle at each vertex
    std::optional<ExactAngle> dir0;  // direction of edge v0 -> v1
    std::string label;
    bool chiralityDistinct = true;

    size_t size() const { return vertices.size(); }
    Real edge_length(size_t i) const;
    // Exact direction of edge i (v_i -> v_{i+1}); requires dir0.
    ExactAngle edge_dir(size_t i) const;
    Vec centroid() const;
};

// Validates and returns a polygon. When dir0 is absent it is snapped from
// the numeric direction against integer degrees and the polygon's angles.
LabeledPolygon make_polygon(std::vector<Vec> vertices, std::vector<ExactAngle> angles,
                            std::string label, std::optional<ExactAngle> dir0 = std::nullopt);

bool is_convex(const LabeledPolygon& p);
Real area(const LabeledPolygon& p);
Real signed_area(const std::vector<Vec>& pts);
LabeledPolygon apply(const Isometry& iso, const LabeledPolygon& p);
LabeledPolygon reflect(const LabeledPolygon& p);

enum class Congruence { Direct, Mirror, None };
const char* to_string(Congruence c);

struct CongruenceMatch {
    Congruence kind = Congruence::None;
    Isometry iso;     // maps p onto q
    size_t shift = 0; // vertex 0 of p lands on vertex `shift` of q
};

CongruenceMatch match_congruent(const LabeledPolygon& p, const LabeledPolygon& q,
                                bool allowMirror);
Congruence congruent(const LabeledPolygon& p, const LabeledPolygon& q, bool allowMirror);
bool has_line_symmetry(const LabeledPolygon& p);

// Numeric interior angles (degrees) of a counterclockwise vertex list.
std::vector<Real> numeric_angles(const std::vector<Vec>& pts);

} // namespace tf

namespace tf {
// Total length along which the boundaries of a and b run together with
// opposite orientation.
Real shared_boundary(const LabeledPolygon& a, const LabeledPolygon& b);
}
