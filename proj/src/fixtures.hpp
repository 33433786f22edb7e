#pragma once

// Tile sets behind the named figure fixtures, shared with tools/gen_fixtures.

#include "tileforge/patch.hpp"

#include <array>
#include <string>
#include <vector>

namespace tf::fixtures {

struct Recipe {
    std::string id;
    std::string caption;
    TileSet tileset;
};

std::vector<Recipe> recipes();

struct StoredPlacement {
    const char* tile;
    bool mirrored;
    std::array<const char*, 3> rotation;
    double tx, ty;
};

struct Stored {
    const char* id;
    std::vector<StoredPlacement> placements;
    std::array<double, 4> lattice;
};

// Generated by tools/gen_fixtures into src/fixtures_data.inc.
const std::vector<Stored>& stored();

} // namespace tf::fixtures
