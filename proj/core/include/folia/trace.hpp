#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "folia/orbit.hpp"
#include "folia/surface.hpp"

namespace folia::geom {

struct SurfacePoint {
  int polygon = 0;
  Point2 point;
  friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;
};

struct CrossingEvent {
  int polygon;    // polygon being left
  int edge;       // edge crossed
  Point2 point;   // exit point in that polygon's chart
  Rational lambda;  // dilation factor of the pairing applied
  friend bool operator==(const CrossingEvent&, const CrossingEvent&) = default;
};

enum class TraceStatus { Closed, HitSingularity, BudgetExhausted };
const char* to_string(TraceStatus s);

struct LeafTrace {
  SurfacePoint start;
  Direction direction;
  std::vector<CrossingEvent> events;
  Rational accumulated_factor{1};
  TraceStatus status = TraceStatus::BudgetExhausted;
  std::optional<int> vertex_class;  // set when status is HitSingularity
  SurfacePoint end;                 // final position (vertex hit, start, or last entry point)
};

// Follows the leaf through `start` in `dir` for at most `budget` crossings.
LeafTrace trace_leaf(const Surface& s, const SurfacePoint& start, const Direction& dir, std::size_t budget);

// Linear holonomy of a closed trace, checked against every cyclic rotation of its events.
Rational holonomy_of_closed_trace(const LeafTrace& trace);

struct FlatCylinder {};
struct AffineCylinder {
  Rational rho;
};
using CylinderKind = std::variant<FlatCylinder, AffineCylinder>;
CylinderKind classify_closed_leaf(const LeafTrace& trace);

// Oriented segment in one polygon, either inside a single edge or an interior chord.
struct Transversal {
  int polygon = 0;
  Point2 start;
  Point2 end;
};

// Parameters of first_return_on_transversal. Transversal k covers the
// parameter range [origin + sum of earlier lengths, ... + its own length).
struct TransversalSpec {
  std::vector<Transversal> transversals;
  Rational origin{0};
};

struct TransversalReturn {
  iet::PartialAiet map;
  std::vector<Interval> unresolved;
};

TransversalReturn first_return_on_transversal(const Surface& s, const TransversalSpec& spec, const Direction& dir,
                                              std::size_t budget);

// Exact Euclidean length of a segment, or nullopt when it is irrational.
std::optional<Rational> exact_length(const Point2& v);

}  // namespace folia::geom
