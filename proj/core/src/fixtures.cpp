#include "folia/fixtures.hpp"

namespace folia::geom {

namespace {
Point2 P(long x, long y) { return {Rational(x), Rational(y)}; }
Point2 P(const Rational& x, const Rational& y) { return {x, y}; }
Rational R(long n, long d) { return Rational(n, d); }
}  // namespace

Surface torus_surface() {
  Surface s;
  s.polygons.push_back({0, {P(0, 0), P(1, 0), P(1, 1), P(0, 1)}});
  s.pairings.push_back({{0, 0}, {0, 2}, {1, P(0, 1)}});
  s.pairings.push_back({{0, 1}, {0, 3}, {1, P(-1, 0)}});
  s.note = "square torus; standard example, coordinates are the unit square";
  return s;
}

Surface disco_surface() {
  Surface s;
  // D1: bottom [0,1) split at 1/2, top edges of length 1 sheared by 19/20.
  s.polygons.push_back({0,
                        {P(0, 0), P(R(1, 2), 0), P(1, 0), P(R(39, 20), 1), P(R(19, 20), 1),
                         P(R(-1, 20), 1)}});
  // D2 = (4, 1) - D1.
  s.polygons.push_back({1,
                        {P(4, 1), P(R(7, 2), 1), P(3, 1), P(R(41, 20), 0), P(R(61, 20), 0),
                         P(R(81, 20), 0)}});
  const Rational half(1, 2);
  // Long top edges fold onto the short bottom edges with factor 1/2.
  s.pairings.push_back({{0, 3}, {0, 0}, {half, P(R(-19, 40), -half)}});
  s.pairings.push_back({{0, 4}, {0, 1}, {half, P(R(21, 40), -half)}});
  s.pairings.push_back({{1, 3}, {1, 0}, {half, P(R(99, 40), 1)}});
  s.pairings.push_back({{1, 4}, {1, 1}, {half, P(R(59, 40), 1)}});
  // The slanted sides connect the two halves by translations.
  s.pairings.push_back({{0, 2}, {1, 2}, {1, P(R(21, 20), 0)}});
  s.pairings.push_back({{0, 5}, {1, 5}, {1, P(R(81, 20), 0)}});
  s.note =
      "Disco surface: genus two, two cone points of angle 4 pi and dilation factors in {1/2, 1, 2} are "
      "the known facts; the trapezoid coordinates are chosen for this library";
  return s;
}

Surface two_chamber_surface() {
  Surface s;
  std::vector<Point2> p{P(0, 0), P(2, 0), P(3, 1), P(1, 3), P(-1, 1)};
  const Point2 c = P(10, 2);
  std::vector<Point2> q;
  for (const auto& v : p) q.push_back(c - Rational(2) * v);
  s.polygons.push_back({0, p});
  s.polygons.push_back({1, q});
  for (int i = 0; i < 5; ++i) {
    Point2 v = c - Rational(2) * (p[i] + p[(i + 1) % 5]);
    s.pairings.push_back({{0, i}, {1, i}, {2, v}});
  }
  s.note =
      "two-chamber surface: genus two with one cone point of angle 6 pi is the known shape; the pentagon "
      "coordinates are chosen for this library";
  return s;
}

TransversalSpec disco_bottom_transversal() {
  TransversalSpec spec;
  spec.transversals.push_back({0, P(0, 0), P(R(1, 2), 0)});
  spec.transversals.push_back({0, P(R(1, 2), 0), P(1, 0)});
  spec.origin = 0;
  return spec;
}

TransversalSpec disco_d2_transversal() {
  TransversalSpec spec;
  // Oriented left to right so that a downward flow crosses it from right to left.
  spec.transversals.push_back({1, P(3, 1), P(R(7, 2), 1)});
  spec.transversals.push_back({1, P(R(7, 2), 1), P(4, 1)});
  spec.origin = 0;
  return spec;
}

Rational disco_sector_lo() { return Rational(-1, 20); }
Rational disco_sector_hi() { return Rational(19, 20); }

bool in_disco_sector(const Direction& d) {
  if (d.dy <= 0) return false;
  Rational s(d.dx, d.dy);
  return disco_sector_lo() < s && s < disco_sector_hi();
}

}  // namespace folia::geom
