#pragma once

#include "tileforge/divide.hpp"
#include "tileforge/patch.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tf {

struct SearchPolicy {
    bool allowReflection = false;
    int maxRadius = 1;
    // DFS expansions per search before RESOURCE_LIMIT
    long maxPlacements = 5'000'000;
    long maxCompletions = 200'000;
    long maxStars = 10'000;
    // tiles grown before looking for lattice vectors
    int growthTiles = 24;
    int maxLatticeCandidates = 40;
    // 0: TILEFORGE_THREADS or hardware concurrency
    int threads = 0;
    double timeLimitSeconds = 600;
    // keep only stars whose tiles admit this many surrounding layers
    int starExtension = 2;
    // completions that fail the cluster partition are discarded when they
    // cannot be surrounded by this many further layers
    int forcedExtension = 2;
    // candidate order by prototile id; empty keeps tile set order
    std::vector<std::string> seedOrder;
};

struct StarCorner {
    std::string tile;
    int corner = -1; // -1: the point is interior to edge `edge`
    int edge = -1;
    bool mirrored = false;
    ExactAngle angle;
};

struct VertexStar {
    enum class Kind { Full, Flat };
    std::vector<StarCorner> corners; // counterclockwise
    Kind kind = Kind::Full;
    Patch witness; // tiles meeting at the point, the point at the origin

    ExactAngle sum() const;
    std::string str() const;
};

enum class CoronaStatus { AllCompletionsForced, NoCompletion, PeriodicFound, Inconclusive };
const char* to_string(CoronaStatus s);

struct CoronaReport {
    CoronaStatus status = CoronaStatus::Inconclusive;
    long completions = 0;
    long expansions = 0;
    int radius = 0;
    double elapsed = 0;
    std::string note;
    // a completion that failed the cluster partition, or the first completion
    std::optional<Patch> witness;
    // translation unit and lattice when periodic
    std::optional<Patch> unit;
    std::optional<std::pair<Vec, Vec>> lattice;
    TileSet unitTiles;
};

// Throws EXPLOSION when the number of distinct stars exceeds policy.maxStars.
std::vector<VertexStar> enumerate_vertex_stars(const TileSet& ts, const SearchPolicy& policy,
                                               std::optional<std::pair<std::string, int>> anchor = std::nullopt);

// Coronas up to policy.maxRadius around `seed`. With `cluster`, each
// completion is checked for a partition into copies of that patch.
CoronaReport grow_coronas(const TileSet& ts, const Placement& seed, const SearchPolicy& policy,
                          const Patch* cluster = nullptr);

CoronaReport check_forced_assembly(const TileSet& ts, const DivisionResult& div, const SearchPolicy& policy);

CoronaReport subset_tiling_probe(const TileSet& ts, const std::vector<std::string>& subset,
                                 const SearchPolicy& policy);

// Looks for a translation unit; status PeriodicFound or Inconclusive.
CoronaReport find_periodic(const TileSet& ts, const SearchPolicy& policy);

// A patch of at least `tiles` placements grown outward from the origin.
// Throws RESOURCE_LIMIT when the bound is hit first.
Patch grow_patch(const TileSet& ts, int tiles, const SearchPolicy& policy);

} // namespace tf
