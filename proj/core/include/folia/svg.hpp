#pragma once

#include <string>
#include <vector>

#include "folia/surface.hpp"
#include "folia/trace.hpp"

namespace folia::geom {

// Polygons at their chart coordinates, each pairing's two edges in a shared
// colour, cone points of angle above 2 pi as dots, and every trace as a group
// holding one polyline per polygon visit. Coordinates are exact decimals with
// 12 fractional digits, so equal inputs give byte-identical files.
std::string render_svg(const Surface& s, const std::vector<LeafTrace>& traces);

// Throws Error(Io) when the file cannot be written.
void render_svg_file(const Surface& s, const std::vector<LeafTrace>& traces, const std::string& path);

}  // namespace folia::geom
