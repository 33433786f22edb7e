#pragma once

#include "tileforge/geom.hpp"

#include <string>
#include <vector>

namespace tf {

struct Prototile {
    std::string id;
    LabeledPolygon shape;
    bool mayReflect = false;
};

struct TileSet {
    std::string name;
    std::vector<Prototile> tiles;

    const Prototile* find(const std::string& id) const;
    const Prototile& at(const std::string& id) const; // throws UNKNOWN_TILE
    int index_of(const std::string& id) const;
    TileSet subset(const std::vector<std::string>& ids) const;
    TileSet with_reflection(const std::string& id, bool mayReflect) const;
};

struct Placement {
    std::string tile;
    Isometry iso;
};

struct Patch {
    std::vector<Placement> placements;

    size_t size() const { return placements.size(); }
    bool empty() const { return placements.empty(); }
};

LabeledPolygon placed_shape(const TileSet& ts, const Placement& p);

struct Contact {
    size_t a = 0, b = 0;
    Real length = 0; // shared boundary length
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> overlaps;
    std::vector<std::string> gaps;
    std::vector<std::string> badStars;
    bool edgeToEdge = true;
    std::vector<Contact> contacts;
    size_t meetingPoints = 0;
};

// Throws UNKNOWN_TILE / POLICY_VIOLATION.
ValidationReport validate_patch(const TileSet& ts, const Patch& p);

// Lattice translation-unit certificate. Throws DEGENERATE_LATTICE.
bool verify_periodic(const TileSet& ts, const Patch& p, Vec v1, Vec v2);

// Mirrored placements of tiles whose prototile forbids reflection.
void check_policy(const TileSet& ts, const Patch& p);

} // namespace tf
