#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "folia/aiet.hpp"
#include "folia/orbit.hpp"
#include "folia/surface.hpp"

namespace folia::rv {

// Map on L with a single discontinuity p: branch A on [L.lo, p), branch B on
// [p, L.hi). The images are disjoint; what they miss is the hole.
class TwoBranchMap {
 public:
  // Throws DegenerateBranch when p is not strictly inside L.
  TwoBranchMap(Interval L, Rational p, Rational slope_a, Rational offset_a, Rational slope_b, Rational offset_b);
  // Accepts a partial map made of exactly two pieces that tile its ambient interval.
  static TwoBranchMap from_partial(const iet::PartialAiet& m);

  const Interval& L() const { return L_; }
  const Rational& p() const { return p_; }
  const iet::AffinePiece& a() const { return a_; }
  const iet::AffinePiece& b() const { return b_; }
  IntervalSet hole() const;
  iet::PartialAiet to_partial() const;
  // Conjugate by the reflection of L; swaps the roles of the branches.
  TwoBranchMap mirrored() const;

  friend bool operator==(const TwoBranchMap&, const TwoBranchMap&) = default;

 private:
  Interval L_;
  Rational p_;
  iet::AffinePiece a_;
  iet::AffinePiece b_;
};

enum class Case { Case1, Case2a, Case2b, SaddleConnection, NonStandard };
const char* to_string(Case c);

// Case1: f(A) inside B and f(B) inside A. Case2a: f(A) inside B and p interior
// to f(B). Case2b: the mirror image. p on an image endpoint is a saddle connection.
Case case_of(const TwoBranchMap& m);

struct RvState {
  TwoBranchMap map;
  int step = 0;
  std::string word;
  std::vector<Rational> lengths;  // |L| at every step so far, including the current one

  explicit RvState(TwoBranchMap m) : map(std::move(m)), lengths{map.L().length()} {}
};

struct Advance {
  char letter;
  RvState next;
};
struct Terminal {
  Case kind;
};
using StepResult = std::variant<Advance, Terminal>;

struct RvOptions {
  // Recompute every step with the generic first-return routine and compare.
  bool cross_check = true;
};

StepResult rv_step(const RvState& state, const RvOptions& opts = {});

enum class Outcome { MorseSmale, SaddleConnection, Undetermined, NonStandard };
const char* to_string(Outcome o);

struct ClassificationReport {
  Outcome outcome = Outcome::Undetermined;
  int step = 0;   // step at which the induction stopped
  int depth = 0;  // depth limit used
  std::string word;
  std::optional<iet::Cycle> cycle;  // attracting cycle of the original map
  TwoBranchMap final_map;
};

struct ClassifyOptions {
  int max_depth = 60;
  std::size_t cycle_budget = 1000000;
  RvOptions rv;
};

ClassificationReport classify(const TwoBranchMap& map, const ClassifyOptions& opts = {});

// First return of the Disco fixture to the bottom of D1 in direction d.
TwoBranchMap disco_first_return(const geom::Direction& d);

// First return to the top short edges of D2 in direction d. Leaves that
// cross into D1 stay there, so they make up the undefined set; `budget` caps
// the crossings spent following them.
iet::PartialAiet disco_d2_first_return(const geom::Direction& d, std::size_t budget = 8);

// Direction with the given rational slope dx/dy, pointing upward.
geom::Direction direction_from_slope(const Rational& slope);

struct SlopeInterval {
  Rational lo;
  Rational hi;
};

// Closed slope interval of Disco directions whose classification word starts
// with prefix; both ends and the midpoint are certified by classify.
SlopeInterval word_to_direction_interval(const std::string& prefix, int max_bisection);

// The same search over any one-parameter family of slopes in (lo, hi).
SlopeInterval word_to_parameter_interval(const std::string& prefix, int max_bisection, const Rational& lo,
                                         const Rational& hi,
                                         const std::function<std::string(const Rational&, int)>& word_at);

}  // namespace folia::rv
