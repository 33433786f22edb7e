// Regenerates src/fixtures_data.inc: a translation unit and lattice for every
// fixture recipe, found by the periodic search and certified before writing.

#include "fixtures.hpp"
#include "tileforge/search.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>

int main()
{
    using namespace tf;
    for (const auto& r : fixtures::recipes()) {
        SearchPolicy pol;
        bool reflect = std::any_of(r.tileset.tiles.begin(), r.tileset.tiles.end(),
                                   [](const Prototile& t) { return t.mayReflect; });
        pol.allowReflection = reflect;
        CoronaReport rep = find_periodic(r.tileset, pol);
        if (!rep.unit) {
            std::cerr << r.id << ": " << rep.note << "\n";
            return 1;
        }
        auto [v1, v2] = *rep.lattice;
        if (!verify_periodic(r.tileset, *rep.unit, v1, v2)) {
            std::cerr << r.id << ": unit does not verify\n";
            return 1;
        }
        bool mirrored = std::any_of(rep.unit->placements.begin(), rep.unit->placements.end(),
                                    [](const Placement& p) { return p.iso.mirrored; });
        if (reflect && !mirrored) {
            std::cerr << r.id << ": expected mirrored placements\n";
            return 1;
        }
        std::printf("{\"%s\",\n {\n", r.id.c_str());
        for (const auto& p : rep.unit->placements) {
            auto t = p.iso.rotation.mod360().triple();
            std::printf("  {\"%s\", %s, {\"%s\", \"%s\", \"%s\"}, %.17g, %.17g},\n", p.tile.c_str(),
                        p.iso.mirrored ? "true" : "false", t[0].c_str(), t[1].c_str(), t[2].c_str(),
                        p.iso.translation.x, p.iso.translation.y);
        }
        std::printf(" },\n {%.17g, %.17g, %.17g, %.17g}},\n", v1.x, v1.y, v2.x, v2.y);
        std::cerr << r.id << ": " << rep.unit->size() << " tiles, " << rep.elapsed << " s\n";
    }
}
