#include "tileforge/tile11.hpp"

namespace tf {

namespace {

// Edge directions X1X2, X2X3, ..., X14X1 in degrees. X13 is the straight
// corner between the two collinear edges X12X13 and X13X14.
constexpr int kEdgeDirs[14] = {-30, 30, 120, 180, 90, 150, -120, 180, -90, -150, -60, 0, 0, 60};

Tile11 build()
{
    std::vector<Vec> pts;
    Vec p{0, 0};
    for (int i = 0; i < 14; ++i) {
        pts.push_back(p);
        p = p + unit_dir(kEdgeDirs[i]);
    }
    std::vector<ExactAngle> angles;
    for (int i = 0; i < 14; ++i) {
        int turn = kEdgeDirs[i] - kEdgeDirs[(i + 13) % 14];
        while (turn > 180)
            turn -= 360;
        while (turn <= -180)
            turn += 360;
        angles.emplace_back(static_cast<long>(180 - turn));
    }
    Tile11 t;
    t.shape = make_polygon(pts, angles, kTile11Id, ExactAngle(kEdgeDirs[0]));
    for (int k = 0; k < 14; ++k)
        t.vertexLabels[k] = "X" + std::to_string(k + 1);
    return t;
}

} // namespace

ExactAngle Tile11::bisector_dir(int k) const
{
    return (edge_dir(k) + angle(k) * Rational(1, 2)).mod360();
}

const Tile11& construct_tile11()
{
    static const Tile11 t = build();
    return t;
}

} // namespace tf
