#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folia/rational.hpp"

namespace folia {

// Half-open interval [lo, hi) with lo < hi enforced at construction.
class Interval {
 public:
  Interval(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational length() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }

  bool contains(const Rational& x) const { return lo_ <= x && x < hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  // Open interior test, used for gaps and hole membership.
  bool contains_open(const Rational& x) const { return lo_ < x && x < hi_; }
  bool overlaps(const Interval& o) const { return lo_ < o.hi_ && o.lo_ < hi_; }
  std::optional<Interval> intersect(const Interval& o) const;

  std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + ")"; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Rational lo_;
  Rational hi_;
};

// Finite union of half-open intervals kept sorted, disjoint and with touching
// neighbours merged. Equality is therefore set equality.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(const Interval& iv) : parts_{iv} {}
  explicit IntervalSet(std::vector<Interval> parts);

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  Rational measure() const;
  bool contains(const Rational& x) const;
  bool contains(const Interval& iv) const;
  std::optional<Interval> hull() const;

  IntervalSet& add(const Interval& iv);
  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet intersect(const IntervalSet& o) const;
  IntervalSet subtract(const IntervalSet& o) const;
  IntervalSet intersect(const Interval& iv) const { return intersect(IntervalSet(iv)); }
  IntervalSet subtract(const Interval& iv) const { return subtract(IntervalSet(iv)); }

  std::string str() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  void normalize();
  std::vector<Interval> parts_;
};

}  // namespace folia
