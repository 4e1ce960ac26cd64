#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "folia/aiet.hpp"

namespace folia::iet {

struct Periodic {
  std::size_t entry;   // index in points where the cycle starts
  std::size_t period;
  Rational multiplier;
};
struct LeftDomain {
  std::size_t step;  // index of the point that has no image
};
struct BudgetExhausted {};

using OrbitStatus = std::variant<Periodic, LeftDomain, BudgetExhausted>;

struct OrbitRecord {
  Rational start;
  std::vector<Rational> points;  // points[0] == start
  OrbitStatus status;
};

// Exact forward orbit, at most `budget` applications of t.
OrbitRecord iterate(const PartialAiet& t, const Rational& x, std::size_t budget);

enum class CycleKind { Neutral, Attracting, Repelling };
const char* to_string(CycleKind k);

struct Cycle {
  std::vector<Rational> points;  // in orbit order, starting from the smallest point
  std::size_t period;
  Rational multiplier;
  CycleKind kind;
};

struct PeriodicSearch {
  std::size_t budget = 4096;
  // Extra starting points on top of the midpoint of every piece.
  std::vector<Rational> seeds;
  bool seed_piece_midpoints = true;
};

// Cycles found from the seeds. Each reported cycle has been re-evaluated
// exactly point by point before it is returned.
std::vector<Cycle> detect_periodic(const PartialAiet& t, const PeriodicSearch& opts);

// The cycle through x when x is periodic with period at most `budget`.
std::optional<Cycle> cycle_through(const PartialAiet& t, const Rational& x, std::size_t budget);

struct Collision {
  Rational from;
  Rational to;
  std::size_t depth;
};

struct KeaneEvidence {
  bool idoc_holds = true;
  std::vector<Collision> collisions;
};

// Orbits of the discontinuities of an IET followed up to `depth` steps.
KeaneEvidence keane_evidence(const Aiet& e, std::size_t depth);

struct FirstReturnResult {
  PartialAiet map;
  // Subintervals whose return was not resolved within the budget.
  std::vector<Interval> unresolved;
};

// First return of t to `target`, by pushing subintervals forward. `budget`
// caps the number of applications of t along any single return path.
FirstReturnResult first_return(const PartialAiet& t, const IntervalSet& target, std::size_t budget);

}  // namespace folia::iet
