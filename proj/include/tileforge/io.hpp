#pragma once

#include "tileforge/patch.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace tf {

// Patch document: tile set (prototile geometry included), placements and an
// optional lattice. Schema in README.md.
struct PatchFile {
    TileSet tileset;
    Patch patch;
    std::optional<std::pair<Vec, Vec>> lattice;
};

std::string to_json(const PatchFile& f, int indent = 2);
// Throws PARSE_ERROR; the file functions throw IO_ERROR.
PatchFile patch_from_json(const std::string& text);

PatchFile load_patch_file(const std::string& path);
void save_patch_file(const std::string& path, const PatchFile& f);

// Rounds to 12 significant digits.
double round12(double v);

struct RenderStyle {
    std::map<std::string, std::string> fill; // by tile id; palette otherwise
    double strokeWidth = 0.02;
    double scale = 60; // pixels per unit edge
    bool markMirrored = true;
};

// Throws INVALID_PATCH when the patch does not validate.
std::string render_svg(const TileSet& ts, const Patch& p, const RenderStyle& style = {});

} // namespace tf
