#pragma once

#include "folia/surface.hpp"
#include "folia/trace.hpp"

namespace folia::geom {

// Unit square with opposite sides glued by translations.
Surface torus_surface();

// Disco surface as two trapezoids D1 (polygon 0) and D2 (polygon 1), D2 being
// D1 turned by half a turn about (2, 1/2). Genus two, two cone points of angle 4 pi.
Surface disco_surface();

// Pentagon glued to a half-turned copy of twice its size. Genus two with a
// single cone point of angle 6 pi; every pairing has dilation factor 2.
Surface two_chamber_surface();

// The bottom of D1 as two transversals [0, 1/2) and [1/2, 1).
TransversalSpec disco_bottom_transversal();

// The top short edges of D2, seen from inside D2: the mirror image of the
// D1 bottom under the half turn, parameterized on [0, 1).
TransversalSpec disco_d2_transversal();

// Directions whose leaves stay trapped in D1: dy > 0 and -1/20 < dx/dy < 19/20.
bool in_disco_sector(const Direction& d);
Rational disco_sector_lo();
Rational disco_sector_hi();

}  // namespace folia::geom
