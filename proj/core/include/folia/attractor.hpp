#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "folia/aiet.hpp"

namespace folia::attractor {

// The open interval (lo, hi) equal to f^n of (part of) the hole.
struct Gap {
  int n;
  Rational lo;
  Rational hi;
  Rational length() const { return hi - lo; }
};

struct SingularEncounter {
  int n;
  Rational point;
};

struct CantorApprox {
  Interval L;
  Interval hole;
  int depth = 0;
  std::vector<Gap> gaps;  // sorted by position
  Rational residual_measure;
  std::optional<SingularEncounter> singular_encounter;
};

// Pushes the hole forward through f for levels n = 0 .. depth - 1.
CantorApprox build_attractor(const iet::PartialAiet& f, const Interval& hole, int depth);

struct InGap {
  int n;
};
struct InResidual {};
using Membership = std::variant<InGap, InResidual>;

Membership contains(const CantorApprox& approx, const Rational& x);

// Exact distance from x to L minus the open gaps.
Rational distance_to_residual(const CantorApprox& approx, const Rational& x);

struct SampleAttraction {
  Rational sample;
  std::vector<Rational> distances;  // after 0, 1, ... steps
  bool non_increasing = true;
  bool within_gap_bound = true;
};

struct AttractionReport {
  std::vector<SampleAttraction> samples;
  bool all_non_increasing = true;
  bool all_within_gap_bound = true;
};

AttractionReport attraction_test(const iet::PartialAiet& f, const CantorApprox& approx,
                                 const std::vector<Rational>& samples, int iterations);

enum class Character { Attracting, Repelling, Neither, Unknown };
const char* to_string(Character c);

// Compares how forward images and backward domains of the iterates of f
// shrink over `n` steps against the residual set of `approx`.
Character invariant_set_character(const iet::PartialAiet& f, const CantorApprox& approx, int n);

struct BoxCounting {
  double slope = 0;
  std::vector<double> log_inverse_scale;
  std::vector<double> log_count;
  std::vector<double> residuals;
  bool approx = true;
};

BoxCounting box_counting_estimate(const CantorApprox& approx, const std::vector<double>& scales);

// Explicit middle-thirds gap list on [0, 1) down to `depth` levels, for tests and benchmarks.
CantorApprox middle_thirds(int depth);

// Forward image and preimage of a set under a partial map.
IntervalSet image_of(const iet::PartialAiet& f, const IntervalSet& s);
IntervalSet preimage_of(const iet::PartialAiet& f, const IntervalSet& s);

}  // namespace folia::attractor
