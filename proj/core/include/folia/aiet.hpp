#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folia/interval.hpp"
#include "folia/rational.hpp"

namespace folia::iet {

// x -> slope * x + offset on a half-open domain, slope > 0.
struct AffinePiece {
  AffinePiece(Interval domain, Rational slope, Rational offset);

  Interval domain;
  Rational slope;
  Rational offset;

  Rational apply(const Rational& x) const { return slope * x + offset; }
  Rational preimage(const Rational& y) const { return (y - offset) / slope; }
  Interval image() const { return Interval(apply(domain.lo()), apply(domain.hi())); }
  // Restriction of this piece to a subinterval of its domain.
  AffinePiece restrict(const Interval& sub) const { return AffinePiece(sub, slope, offset); }

  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

// Piecewise-affine injective map defined on part of an ambient interval.
// Points of the ambient interval outside every piece form the undefined set.
class PartialAiet {
 public:
  PartialAiet(Interval ambient, std::vector<AffinePiece> pieces, bool require_injective = true);

  const Interval& ambient() const { return ambient_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const IntervalSet& undefined_set() const { return undefined_; }
  IntervalSet domain() const;
  IntervalSet image() const;

  // Index of the piece whose domain holds x, if any.
  std::optional<std::size_t> piece_index(const Rational& x) const;
  std::optional<Rational> evaluate(const Rational& x) const;

  // Same map with adjacent pieces sharing one affine formula merged.
  PartialAiet canonical() const;

  friend bool operator==(const PartialAiet&, const PartialAiet&) = default;

 private:
  Interval ambient_;
  std::vector<AffinePiece> pieces_;
  IntervalSet undefined_;
};

class Aiet {
 public:
  // Throws InvalidArgument unless the piece domains tile the ambient interval.
  Aiet(Interval ambient, std::vector<AffinePiece> pieces);

  const Interval& ambient() const { return map_.ambient(); }
  const std::vector<AffinePiece>& pieces() const { return map_.pieces(); }
  const PartialAiet& partial() const { return map_; }
  operator const PartialAiet&() const { return map_; }

  std::optional<std::size_t> piece_index(const Rational& x) const { return map_.piece_index(x); }
  std::optional<Rational> evaluate(const Rational& x) const { return map_.evaluate(x); }
  bool is_iet() const;
  Aiet canonical() const;

  friend bool operator==(const Aiet&, const Aiet&) = default;

 private:
  PartialAiet map_;
};

struct ImageDefect {
  enum class Kind { Gap, Overlap } kind;
  Interval where;
};

struct BijectivityCertificate {
  bool bijective = false;
  std::vector<ImageDefect> defects;
};

BijectivityCertificate check_bijective(const Aiet& t);
// Inverse of a bijective map; throws NotBijective otherwise.
Aiet invert(const Aiet& t);
// Inverse of an injective partial map, defined on its image.
PartialAiet invert_partial(const PartialAiet& m);
// Promote a partial map with no undefined points and tiling images to an Aiet.
std::optional<Aiet> as_aiet(const PartialAiet& m);

}  // namespace folia::iet
