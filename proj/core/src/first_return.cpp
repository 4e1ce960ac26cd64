#include "folia/orbit.hpp"

#include <deque>

#include "folia/error.hpp"

namespace folia::iet {

namespace {

// A subinterval of the target together with the composite map that carries
// it to its current position: x -> slope * x + offset.
struct Work {
  Interval source;
  Rational slope;
  Rational offset;
  std::size_t steps;
};

Interval preimage(const Interval& img, const Rational& slope, const Rational& offset) {
  return Interval((img.lo() - offset) / slope, (img.hi() - offset) / slope);
}

}  // namespace

FirstReturnResult first_return(const PartialAiet& t, const IntervalSet& target, std::size_t budget) {
  if (target.empty()) throw Error(ErrorCode::InvalidArgument, "first_return needs a non-empty target");
  Interval hull = *target.hull();
  if (!t.ambient().contains(hull)) {
    throw Error(ErrorCode::InvalidArgument, "target " + target.str() + " not inside ambient " + t.ambient().str());
  }

  std::deque<Work> queue;
  for (const auto& part : target.parts()) queue.push_back({part, 1, 0, 0});

  std::vector<AffinePiece> out;
  std::vector<Interval> unresolved;

  while (!queue.empty()) {
    Work w = std::move(queue.front());
    queue.pop_front();
    if (w.steps >= budget) {
      unresolved.push_back(w.source);
      continue;
    }
    Interval cur(w.slope * w.source.lo() + w.offset, w.slope * w.source.hi() + w.offset);
    for (const auto& piece : t.pieces()) {
      auto part = cur.intersect(piece.domain);
      if (!part) continue;
      Rational slope = piece.slope * w.slope;
      Rational offset = piece.slope * w.offset + piece.offset;
      Interval img = piece.restrict(*part).image();
      IntervalSet img_set(img);
      const IntervalSet hits = img_set.intersect(target);
      const IntervalSet misses = img_set.subtract(target);
      for (const auto& hit : hits.parts()) {
        out.emplace_back(preimage(hit, slope, offset), slope, offset);
      }
      for (const auto& miss : misses.parts()) {
        queue.push_back({preimage(miss, slope, offset), slope, offset, w.steps + 1});
      }
    }
  }
  // Points that fall into the undefined set of t simply get no piece.
  PartialAiet map(hull, std::move(out));
  return {map.canonical(), IntervalSet(std::move(unresolved)).parts()};
}

}  // namespace folia::iet
