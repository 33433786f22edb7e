#pragma once

#include "tileforge/geom.hpp"
#include "tileforge/patch.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tf {

struct Tile11 {
    LabeledPolygon shape;                 // vertex i is X(i+1)
    std::array<std::string, 14> vertexLabels;

    // k in 1..14
    Vec X(int k) const { return shape.vertices[(k - 1) % 14]; }
    const ExactAngle& angle(int k) const { return shape.angles[(k - 1) % 14]; }
    // Exact direction of edge X(k) -> X(k+1).
    ExactAngle edge_dir(int k) const { return shape.edge_dir((k - 1) % 14); }
    // Direction of the interior angle bisector at X(k).
    ExactAngle bisector_dir(int k) const;
};

const Tile11& construct_tile11();

inline const char* kTile11Id = "Tile(1,1)";

struct Fixture {
    std::string id;
    std::string caption;
    TileSet tileset;
    Patch patch;
    std::optional<std::pair<Vec, Vec>> lattice;
};

std::vector<std::string> fixture_ids();
const Fixture& fixture(const std::string& figureId);

} // namespace tf
