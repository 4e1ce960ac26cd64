#include "folia/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "folia/error.hpp"

namespace folia::attractor {

namespace {

struct Fragment {
  Rational lo, hi;
};

}  // namespace

IntervalSet image_of(const iet::PartialAiet& f, const IntervalSet& s) {
  std::vector<Interval> out;
  for (const auto& p : f.pieces()) {
    const IntervalSet part = s.intersect(p.domain);
    for (const auto& iv : part.parts()) out.push_back(p.restrict(iv).image());
  }
  return IntervalSet(std::move(out));
}

IntervalSet preimage_of(const iet::PartialAiet& f, const IntervalSet& s) {
  std::vector<Interval> out;
  for (const auto& p : f.pieces()) {
    const IntervalSet part = s.intersect(p.image());
    for (const auto& iv : part.parts()) out.emplace_back(p.preimage(iv.lo()), p.preimage(iv.hi()));
  }
  return IntervalSet(std::move(out));
}

CantorApprox build_attractor(const iet::PartialAiet& f, const Interval& hole, int depth) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be at least 1");
  const Interval& L = f.ambient();
  IntervalSet complement = IntervalSet(L).subtract(f.image());
  if (complement != IntervalSet(hole)) {
    throw Error(ErrorCode::HoleMismatch, "hole " + hole.str() + " differs from the complement of the images " +
                                             complement.str());
  }
  std::set<Rational> sigma;
  for (const auto& p : f.pieces()) {
    for (const Rational& x : {p.domain.lo(), p.domain.hi()}) {
      if (L.contains_open(x)) sigma.insert(x);
    }
  }

  CantorApprox out{L, hole, depth, {}, 0, std::nullopt};
  // Level 0 is the hole itself, cut at the discontinuities it contains.
  std::vector<Fragment> level;
  {
    Rational cursor = hole.lo();
    for (auto it = sigma.upper_bound(hole.lo()); it != sigma.end() && *it < hole.hi(); ++it) {
      level.push_back({cursor, *it});
      cursor = *it;
    }
    level.push_back({cursor, hole.hi()});
  }
  for (int n = 0; n < depth; ++n) {
    for (const auto& fr : level) out.gaps.push_back({n, fr.lo, fr.hi});
    if (n + 1 == depth) break;
    std::vector<Fragment> next;
    for (const auto& fr : level) {
      if (n > 0) {
        auto it = sigma.lower_bound(fr.lo);
        if (it != sigma.end() && *it <= fr.hi) {
          out.singular_encounter = SingularEncounter{n, *it};
          break;
        }
      }
      auto idx = f.piece_index((fr.lo + fr.hi) / 2);
      if (!idx) {
        out.singular_encounter = SingularEncounter{n + 1, fr.lo};
        break;
      }
      const auto& piece = f.pieces()[*idx];
      next.push_back({piece.apply(fr.lo), piece.apply(fr.hi)});
    }
    if (out.singular_encounter) break;
    level = std::move(next);
  }

  std::sort(out.gaps.begin(), out.gaps.end(), [](const Gap& a, const Gap& b) { return a.lo < b.lo; });
  Rational total;
  for (std::size_t i = 0; i < out.gaps.size(); ++i) {
    if (i > 0 && out.gaps[i - 1].hi > out.gaps[i].lo) {
      throw Error(ErrorCode::Internal, "gaps overlap at " + out.gaps[i].lo.str());
    }
    total += out.gaps[i].length();
  }
  out.residual_measure = L.length() - total;
  return out;
}

Membership contains(const CantorApprox& approx, const Rational& x) {
  if (x < approx.L.lo() || x > approx.L.hi()) {
    throw Error(ErrorCode::OutOfDomain, x.str() + " is outside " + approx.L.str());
  }
  auto it = std::upper_bound(approx.gaps.begin(), approx.gaps.end(), x,
                             [](const Rational& v, const Gap& g) { return v <= g.lo; });
  if (it != approx.gaps.begin()) {
    const Gap& g = *std::prev(it);
    if (g.lo < x && x < g.hi) return InGap{g.n};
  }
  return InResidual{};
}

Rational distance_to_residual(const CantorApprox& approx, const Rational& x) {
  auto m = contains(approx, x);
  if (std::holds_alternative<InResidual>(m)) return 0;
  auto it = std::upper_bound(approx.gaps.begin(), approx.gaps.end(), x,
                             [](const Rational& v, const Gap& g) { return v <= g.lo; });
  const Gap& g = *std::prev(it);
  return min(x - g.lo, g.hi - x);
}

AttractionReport attraction_test(const iet::PartialAiet& f, const CantorApprox& approx,
                                 const std::vector<Rational>& samples, int iterations) {
  // bound[t]: longest gap at level t or deeper.
  std::vector<Rational> bound(static_cast<std::size_t>(std::max(iterations, 0)) + 1, Rational(0));
  for (const auto& g : approx.gaps) {
    for (int t = 0; t <= std::min(g.n, iterations); ++t) bound[t] = max(bound[t], g.length());
  }
  AttractionReport rep;
  for (const auto& s : samples) {
    SampleAttraction sa{s, {}, true, true};
    Rational x = s;
    for (int t = 0; t <= iterations; ++t) {
      Rational d = distance_to_residual(approx, x);
      if (!sa.distances.empty() && d > sa.distances.back()) sa.non_increasing = false;
      if (d > bound[t]) sa.within_gap_bound = false;
      sa.distances.push_back(d);
      if (t == iterations) break;
      auto y = f.evaluate(x);
      if (!y) break;
      x = *y;
    }
    rep.all_non_increasing = rep.all_non_increasing && sa.non_increasing;
    rep.all_within_gap_bound = rep.all_within_gap_bound && sa.within_gap_bound;
    rep.samples.push_back(std::move(sa));
  }
  return rep;
}

const char* to_string(Character c) {
  switch (c) {
    case Character::Attracting: return "attracting";
    case Character::Repelling: return "repelling";
    case Character::Neither: return "neither";
    case Character::Unknown: return "unknown";
  }
  return "?";
}

Character invariant_set_character(const iet::PartialAiet& f, const CantorApprox& approx, int n) {
  if (n < 1) return Character::Unknown;
  const int steps = std::max(n, approx.depth);
  std::vector<Interval> gap_parts;
  for (const auto& g : approx.gaps) gap_parts.emplace_back(g.lo, g.hi);
  const IntervalSet target = IntervalSet(approx.L).subtract(IntervalSet(gap_parts));

  IntervalSet fwd(f.ambient()), bwd(f.ambient());
  bool fwd_strict = true, bwd_strict = true;
  bool fwd_onto = false, bwd_onto = false;
  for (int k = 1; k <= steps; ++k) {
    IntervalSet f2 = image_of(f, fwd);
    IntervalSet b2 = preimage_of(f, bwd);
    if (k <= n) {
      fwd_strict = fwd_strict && f2.measure() < fwd.measure();
      bwd_strict = bwd_strict && b2.measure() < bwd.measure();
    }
    fwd = std::move(f2);
    bwd = std::move(b2);
    if (k == approx.depth) {
      fwd_onto = fwd == target;
      bwd_onto = bwd == target;
    }
  }
  if (fwd_strict && bwd_strict) return Character::Neither;
  if (fwd_strict && fwd_onto) return Character::Attracting;
  if (bwd_strict && bwd_onto) return Character::Repelling;
  return Character::Unknown;
}

BoxCounting box_counting_estimate(const CantorApprox& approx, const std::vector<double>& scales) {
  if (scales.size() < 3) throw Error(ErrorCode::InvalidArgument, "box counting needs at least three scales");
  // Closed components of the residual set, in order.
  std::vector<std::pair<Rational, Rational>> comps;
  Rational cursor = approx.L.lo();
  for (const auto& g : approx.gaps) {
    comps.emplace_back(cursor, g.lo);
    cursor = g.hi;
  }
  comps.emplace_back(cursor, approx.L.hi());

  BoxCounting out;
  for (double sc : scales) {
    if (!(sc > 0)) throw Error(ErrorCode::InvalidArgument, "scales must be positive");
    // Snap the scale to the simplest nearby rational so that 1/3 really is 1/3.
    Rational eps = Rational::simplest_between(Rational::from_double(sc * (1 - 1e-12)),
                                              Rational::from_double(sc * (1 + 1e-12)));
    BigInt count = 0;
    BigInt covered = -1;  // highest cell index counted so far
    for (const auto& [a, b] : comps) {
      if (b < a) continue;
      Rational ra = (a - approx.L.lo()) / eps;
      Rational rb = (b - approx.L.lo()) / eps;
      BigInt first = ra.floor();
      BigInt last = first;
      if (a < b) {
        BigInt c = rb.floor();
        last = (Rational(c) == rb) ? BigInt(c - 1) : c;
        if (last < first) last = first;
      }
      if (last <= covered) continue;
      if (first <= covered) first = covered + 1;
      count += last - first + 1;
      covered = last;
    }
    out.log_inverse_scale.push_back(-std::log(eps.to_double()));
    out.log_count.push_back(std::log(count.get_d()));
  }
  const double m = static_cast<double>(scales.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    sx += out.log_inverse_scale[i];
    sy += out.log_count[i];
    sxx += out.log_inverse_scale[i] * out.log_inverse_scale[i];
    sxy += out.log_inverse_scale[i] * out.log_count[i];
  }
  double den = m * sxx - sx * sx;
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "scales must differ");
  out.slope = (m * sxy - sx * sy) / den;
  double icpt = (sy - out.slope * sx) / m;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    out.residuals.push_back(out.log_count[i] - (icpt + out.slope * out.log_inverse_scale[i]));
  }
  return out;
}

CantorApprox middle_thirds(int depth) {
  Interval L(0, 1);
  CantorApprox out{L, Interval(Rational(1, 3), Rational(2, 3)), depth, {}, 0, std::nullopt};
  std::vector<std::pair<Rational, Rational>> level{{0, 1}};
  for (int n = 0; n < depth; ++n) {
    std::vector<std::pair<Rational, Rational>> next;
    for (const auto& [a, b] : level) {
      Rational third = (b - a) / 3;
      out.gaps.push_back({n, a + third, b - third});
      next.emplace_back(a, a + third);
      next.emplace_back(b - third, b);
    }
    level = std::move(next);
  }
  std::sort(out.gaps.begin(), out.gaps.end(), [](const Gap& a, const Gap& b) { return a.lo < b.lo; });
  Rational total;
  for (const auto& g : out.gaps) total += g.length();
  out.residual_measure = 1 - total;
  return out;
}

}  // namespace folia::attractor
