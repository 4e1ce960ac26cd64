#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folia/aiet.hpp"
#include "folia/rational.hpp"

namespace folia::geom {

struct Point2 {
  Rational x;
  Rational y;

  friend Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(const Rational& s, const Point2& a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Point2&, const Point2&) = default;
  std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }
};

inline Rational cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }

struct Polygon {
  int id = 0;
  std::vector<Point2> vertices;  // counterclockwise; edge i runs from vertex i to vertex i+1

  std::size_t size() const { return vertices.size(); }
  const Point2& vertex(std::size_t i) const { return vertices[i % vertices.size()]; }
  Point2 edge_vector(std::size_t i) const { return vertex(i + 1) - vertex(i); }

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

// z -> lambda * z + v with lambda > 0.
struct DilationMap {
  Rational lambda{1};
  Point2 v;

  Point2 apply(const Point2& z) const { return lambda * z + v; }
  DilationMap inverse() const {
    Rational inv = lambda.inverse();
    return {inv, Point2{-inv * v.x, -inv * v.y}};
  }
  friend bool operator==(const DilationMap&, const DilationMap&) = default;
};

struct EdgeRef {
  int polygon = 0;
  int edge = 0;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

// `map` sends edge a onto edge b, reversing orientation.
struct EdgePairing {
  EdgeRef a;
  EdgeRef b;
  DilationMap map;
  friend bool operator==(const EdgePairing&, const EdgePairing&) = default;
};

struct Surface {
  std::vector<Polygon> polygons;  // polygons[i].id == i
  std::vector<EdgePairing> pairings;
  std::string note;  // free-form provenance, carried through JSON

  friend bool operator==(const Surface& a, const Surface& b) {
    return a.polygons == b.polygons && a.pairings == b.pairings;
  }
};

struct Corner {
  int polygon;
  int vertex;
  friend bool operator==(const Corner&, const Corner&) = default;
};

struct VertexClass {
  std::vector<Corner> corners;  // in chaining order
  int l = 0;                    // total cone angle is 2 * pi * l
};

struct ValidationReport {
  bool ok = false;
  std::vector<std::string> errors;
  std::vector<VertexClass> vertex_classes;
  int euler_characteristic = 0;
  int genus = -1;
};

ValidationReport validate(const Surface& s);

// Every corner's vertex class index; requires a sound pairing table.
std::vector<std::vector<int>> corner_classes(const Surface& s);

// Rectangle of height 1 over the ambient interval whose vertical first return
// to the bottom side is t.
Surface suspend(const iet::Aiet& t);

struct Direction {
  BigInt dx;
  BigInt dy;

  Direction(BigInt dx, BigInt dy);
  // "dx/dy" as a pair of integers, e.g. "0/1" is vertical upward.
  static Direction parse(const std::string& text);
  Point2 vec() const { return {Rational(dx), Rational(dy)}; }
  Direction reversed() const { return Direction(-dx, -dy); }
  std::string str() const { return dx.get_str() + "/" + dy.get_str(); }
  friend bool operator==(const Direction& a, const Direction& b) { return a.dx == b.dx && a.dy == b.dy; }
};

// Lookup helpers built once per surface.
class SurfaceIndex {
 public:
  explicit SurfaceIndex(const Surface& s);

  const Surface& surface() const { return s_; }
  // Partner edge of (p, e) and the map sending (p, e) onto it.
  const std::pair<EdgeRef, DilationMap>& partner(int polygon, int edge) const {
    return partner_[polygon][edge];
  }
  int vertex_class(int polygon, int vertex) const { return classes_[polygon][vertex]; }

 private:
  Surface s_;
  std::vector<std::vector<std::pair<EdgeRef, DilationMap>>> partner_;
  std::vector<std::vector<int>> classes_;
};

}  // namespace folia::geom
