#include "fixtures.hpp"

#include "tileforge/divide.hpp"
#include "tileforge/tile11.hpp"

#include <map>
#include <mutex>

namespace tf::fixtures {

namespace {

TileSet pick(const DivisionSpec& s, const std::vector<std::string>& ids)
{
    return divide(s).tileset.subset(ids);
}

} // namespace

std::vector<Recipe> recipes()
{
    std::vector<Recipe> r;
    r.push_back({"FIG2", "Tile(1,1) with mirrored copies, periodic", tile11_tileset(true)});
    r.push_back({"FIG6", "P1 and P2 of M1(165), periodic", pick(DivisionSpec::m1(165), {"P1", "P2"})});
    r.push_back({"FIG7", "P1 and P3 of M1(180), periodic", pick(DivisionSpec::m1(180), {"P1", "P3"})});
    r.push_back({"FIG25", "pentagon P2 of M1(90), periodic", pick(DivisionSpec::m1(90), {"P2"})});
    r.push_back({"FIG27A", "hexagon P3 of M1(75), periodic", pick(DivisionSpec::m1(75), {"P3"})});
    r.push_back({"FIG27B", "hexagon P3 of M1(105), periodic", pick(DivisionSpec::m1(105), {"P3"})});
    r.push_back({"FIG28", "P1, P2 and mirrored P2 of M1(180), periodic",
                 pick(DivisionSpec::m1(180), {"P1", "P2"}).with_reflection("P2", true)});
    r.push_back({"FIG9AD", "CP(X14), CP(X3) and mirrored CP(X14) of D(105,75), periodic",
                 pick(DivisionSpec::d(105, 75), {"CP(X14)", "CP(X3)"}).with_reflection("CP(X14)", true)});
    return r;
}

const std::vector<Stored>& stored()
{
    static const std::vector<Stored> data = {
#include "fixtures_data.inc"
    };
    return data;
}

} // namespace tf::fixtures

namespace tf {

std::vector<std::string> fixture_ids()
{
    std::vector<std::string> ids;
    for (const auto& s : fixtures::stored())
        ids.emplace_back(s.id);
    return ids;
}

const Fixture& fixture(const std::string& figureId)
{
    static std::mutex mu;
    static std::map<std::string, Fixture> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(figureId); it != cache.end())
        return it->second;
    for (const auto& s : fixtures::stored()) {
        if (figureId != s.id)
            continue;
        for (auto& r : fixtures::recipes()) {
            if (r.id != figureId)
                continue;
            Fixture f;
            f.id = r.id;
            f.caption = r.caption;
            f.tileset = std::move(r.tileset);
            f.tileset.name = r.id;
            for (const auto& p : s.placements) {
                Placement pl;
                pl.tile = p.tile;
                pl.iso.mirrored = p.mirrored;
                pl.iso.rotation = ExactAngle::from_triple({p.rotation[0], p.rotation[1], p.rotation[2]});
                pl.iso.translation = Vec{p.tx, p.ty};
                f.patch.placements.push_back(std::move(pl));
            }
            f.lattice = std::make_pair(Vec{s.lattice[0], s.lattice[1]}, Vec{s.lattice[2], s.lattice[3]});
            return cache.emplace(figureId, std::move(f)).first->second;
        }
    }
    throw Error("UNKNOWN_FIGURE", "no fixture '" + figureId + "'");
}

} // namespace tf
