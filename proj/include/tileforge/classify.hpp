#pragma once

#include "tileforge/geom.hpp"

#include <set>
#include <string>

namespace tf {

// Families are named "P1".."P15" (convex pentagons) and "H1".."H3"
// (convex hexagons).
struct TypeVerdict {
    std::set<std::string> families;
    // Some family in the verdict tiles without reflected copies.
    bool reflectionFree = false;

    bool monotile() const { return !families.empty(); }
    std::string str() const;
};

// Throws NOT_PENTAGON.
TypeVerdict classify_pentagon(const LabeledPolygon& p);
// Throws NOT_HEXAGON.
TypeVerdict classify_hexagon(const LabeledPolygon& h);
// Pentagons and hexagons are classified; other polygons get an empty verdict.
TypeVerdict classify_polygon(const LabeledPolygon& p);

// Angle C of the rigid Type 14 pentagon, degrees: acos((3*sqrt(57) - 17) / 16).
double type14_reference_angle();

} // namespace tf
