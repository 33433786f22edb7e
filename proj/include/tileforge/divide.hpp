#pragma once

#include "tileforge/geom.hpp"
#include "tileforge/patch.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tf {

enum class Method { M1, M2, M3, M4, D, D6 };

const char* to_string(Method m);
Method parse_method(const std::string& s);

struct DivisionSpec {
    Method method = Method::M1;
    ExactAngle angle;   // alpha, beta, gamma, delta, or zeta (D6)
    ExactAngle angle2;  // epsilon (D)
    Real ratio = 0;     // t = X6Q/X5X6 (M3) or u = X6Q (D6)

    static DivisionSpec m1(ExactAngle alpha);
    static DivisionSpec m2(ExactAngle beta);
    static DivisionSpec m3(Real t);
    static DivisionSpec m4(ExactAngle gamma);
    static DivisionSpec d(ExactAngle delta, ExactAngle epsilon);
    static DivisionSpec d6(Real u, ExactAngle zeta = ExactAngle(120));

    std::string name() const;
};

// 75 + GAMMA_STAR_EXCESS and 60 + EPS_STAR_EXCESS.
ExactAngle gamma_star();
ExactAngle epsilon_star();

struct CensusShape {
    size_t edges = 0;
    size_t pieces = 0;       // with multiplicity
    size_t directTypes = 0;  // mirror images counted separately
    size_t mirrorTypes = 0;  // mirror images identified
};

struct Census {
    std::vector<CensusShape> shapes; // ascending edge count
    size_t n = 0, m = 0;
    std::string summary() const;
};

struct DivisionResult {
    DivisionSpec spec;
    std::vector<LabeledPolygon> pieces;   // in the Tile(1,1) frame
    std::vector<std::string> pieceTile;   // prototile id of each piece
    TileSet tileset;                      // one prototile per direct class
    Patch assembly;                       // reproduces `pieces`
    Census census;
    // M3: QR differs from X6X7 (the conjectured aperiodic range).
    bool conjectureCase = false;
    // D6: interior angles of CP2(X7) at Q and R.
    std::optional<ExactAngle> zeta, eta;
    bool hexagonCase = false;

    // Index of the piece that shares an edge with every other piece.
    size_t hub_piece() const;
};

DivisionResult divide(const DivisionSpec& spec);
Census piece_census(const DivisionResult& res);

// Each Tile(1,1) placement becomes the five assembled pieces.
Patch subdivide_patch(const Patch& tilePatch, const DivisionResult& div);

TileSet tile11_tileset(bool mayReflect = false);

} // namespace tf
