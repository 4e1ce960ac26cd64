#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "folia/attractor.hpp"
#include "folia/error.hpp"
#include "folia/rauzy.hpp"
#include "support/generators.hpp"

using namespace folia;
using namespace folia::attractor;

namespace {

iet::PartialAiet theta_map() { return rv::disco_first_return(rv::direction_from_slope(gen::cantor_like_slope())).to_partial(); }

Interval hole_of(const iet::PartialAiet& f) {
  auto c = IntervalSet(f.ambient()).subtract(f.image());
  return c.parts().at(0);
}

Rational pow2(int k) { return pow(Rational(2), k); }

// Found by a seeded search over Disco-type maps: f^2 of the hole straddles the discontinuity.
rv::TwoBranchMap second_level_encounter() {
  return rv::TwoBranchMap(Interval(0, 1), Rational(5297, 6250), Rational(7017, 10000), Rational(25330951, 62500000),
                          Rational(4971, 20000), Rational(-26331387, 125000000));
}

const CantorApprox& theta_approx_20() {
  static const CantorApprox a = [] {
    auto f = theta_map();
    return build_attractor(f, hole_of(f), 20);
  }();
  return a;
}

}  // namespace

TEST(BuildAttractor, GeometricGapDecayAtCantorLikeSlope) {
  const auto& a = theta_approx_20();
  EXPECT_FALSE(a.singular_encounter.has_value());
  EXPECT_EQ(a.hole.length(), Rational(1, 2));
  std::map<int, Rational> per_level;
  for (const auto& g : a.gaps) per_level[g.n] += g.length();
  ASSERT_EQ(per_level.size(), 20u);
  for (const auto& [n, len] : per_level) EXPECT_EQ(len, pow2(-(n + 1))) << n;
  EXPECT_EQ(a.residual_measure, pow2(-20));
}

TEST(BuildAttractor, ResidualAtDepthTen) {
  auto f = theta_map();
  auto a = build_attractor(f, hole_of(f), 10);
  EXPECT_EQ(a.residual_measure, pow2(-10));
}

TEST(BuildAttractor, MeasureIdentityAndDisjointness) {
  const auto& a = theta_approx_20();
  Rational total = a.residual_measure;
  for (std::size_t i = 0; i < a.gaps.size(); ++i) {
    total += a.gaps[i].length();
    EXPECT_LT(a.gaps[i].lo, a.gaps[i].hi);
    if (i > 0) EXPECT_LE(a.gaps[i - 1].hi, a.gaps[i].lo);
  }
  EXPECT_EQ(total, a.L.length());
}

TEST(BuildAttractor, DeeperApproximationsRefine) {
  auto f = theta_map();
  const Interval hole = hole_of(f);
  auto prev = build_attractor(f, hole, 1);
  for (int n = 2; n <= 12; ++n) {
    auto next = build_attractor(f, hole, n);
    EXPECT_LT(next.residual_measure, prev.residual_measure);
    IntervalSet prev_gaps, next_gaps;
    for (const auto& g : prev.gaps) prev_gaps.add(Interval(g.lo, g.hi));
    for (const auto& g : next.gaps) next_gaps.add(Interval(g.lo, g.hi));
    EXPECT_EQ(next_gaps.intersect(prev_gaps), prev_gaps);
    prev = std::move(next);
  }
}

TEST(BuildAttractor, NoIsolatedResidualPointsWithoutEncounter) {
  const auto& a = theta_approx_20();
  for (std::size_t i = 1; i < a.gaps.size(); ++i) EXPECT_NE(a.gaps[i - 1].hi, a.gaps[i].lo);
}

TEST(BuildAttractor, SingularEncounters) {
  auto vertical = rv::disco_first_return(geom::Direction(0, 1)).to_partial();
  auto v = build_attractor(vertical, hole_of(vertical), 10);
  ASSERT_TRUE(v.singular_encounter.has_value());
  EXPECT_EQ(v.singular_encounter->n, 3);
  EXPECT_EQ(v.singular_encounter->point, Rational(19, 20));

  auto m = second_level_encounter();
  auto f = m.to_partial();
  auto e = build_attractor(f, hole_of(f), 10);
  ASSERT_TRUE(e.singular_encounter.has_value());
  EXPECT_EQ(e.singular_encounter->n, 2);
  EXPECT_EQ(e.singular_encounter->point, m.p());
  bool straddles = false;
  for (const auto& g : e.gaps) straddles = straddles || (g.n == 2 && g.lo <= m.p() && m.p() <= g.hi);
  EXPECT_TRUE(straddles);
}

TEST(BuildAttractor, HoleMismatch) {
  auto f = theta_map();
  const Interval h = hole_of(f);
  try {
    build_attractor(f, Interval(h.lo(), h.hi() - Rational(1, 1000)), 5);
    FAIL() << "expected HoleMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HoleMismatch);
  }
}

TEST(Contains, Examples) {
  auto f = theta_map();
  const auto& a = theta_approx_20();
  const Interval h = a.hole;
  auto in0 = contains(a, h.midpoint());
  ASSERT_TRUE(std::holds_alternative<InGap>(in0));
  EXPECT_EQ(std::get<InGap>(in0).n, 0);
  EXPECT_TRUE(std::holds_alternative<InResidual>(contains(a, a.L.lo())));
  auto in1 = contains(a, *f.evaluate(h.midpoint()));
  ASSERT_TRUE(std::holds_alternative<InGap>(in1));
  EXPECT_EQ(std::get<InGap>(in1).n, 1);
  // Gap endpoints belong to the closed residual set.
  EXPECT_TRUE(std::holds_alternative<InResidual>(contains(a, h.lo())));
  EXPECT_THROW(contains(a, a.L.hi() + Rational(1, 1000)), Error);
  EXPECT_THROW(contains(a, a.L.lo() - Rational(1, 1000)), Error);
}

TEST(DistanceToResidual, ExactValues) {
  const auto& a = theta_approx_20();
  const Interval h = a.hole;
  EXPECT_EQ(distance_to_residual(a, h.lo()), Rational(0));
  EXPECT_EQ(distance_to_residual(a, h.midpoint()), h.length() / 2);
  EXPECT_EQ(distance_to_residual(a, h.lo() + Rational(1, 1000)), Rational(1, 1000));
}

TEST(AttractionTest, HoleSamplesObeyGapBound) {
  auto f = theta_map();
  const auto& a = theta_approx_20();
  auto r = attraction_test(f, a, {a.hole.midpoint(), a.hole.lo() + a.hole.length() / 7}, 15);
  EXPECT_TRUE(r.all_within_gap_bound);
  for (const auto& s : r.samples) {
    ASSERT_EQ(s.distances.size(), 16u);
    for (int n = 0; n < 16; ++n) EXPECT_LE(s.distances[n], pow2(-(n + 1)));
  }
}

TEST(AttractionTest, ResidualSampleStaysAtZero) {
  auto f = theta_map();
  const auto& a = theta_approx_20();
  auto r = attraction_test(f, a, {a.L.lo()}, 10);
  for (const auto& d : r.samples[0].distances) EXPECT_EQ(d, Rational(0));
}

TEST(AttractionTest, RandomSamplesDecrease) {
  auto f = theta_map();
  const auto& a = theta_approx_20();
  gen::Rng rng(41);
  std::vector<Rational> samples;
  for (int i = 0; i < 100; ++i) samples.push_back(gen::random_rational(rng, a.L.lo(), a.L.hi(), 1 << 30));
  auto r = attraction_test(f, a, samples, 15);
  EXPECT_TRUE(r.all_non_increasing);
  EXPECT_TRUE(r.all_within_gap_bound);
}

TEST(Character, DiscoSidesAtCantorLikeSlope) {
  auto f = theta_map();
  EXPECT_EQ(invariant_set_character(f, theta_approx_20(), 20), Character::Attracting);

  auto g = rv::disco_d2_first_return(rv::direction_from_slope(gen::cantor_like_slope()));
  auto g_inv = iet::invert_partial(g);
  auto a2 = build_attractor(g_inv, hole_of(g_inv), 20);
  EXPECT_FALSE(a2.singular_encounter.has_value());
  EXPECT_EQ(a2.residual_measure, pow2(-20));
  EXPECT_EQ(invariant_set_character(g, a2, 20), Character::Repelling);
}

TEST(Character, IdentityWithArtificialHole) {
  iet::PartialAiet id(Interval(0, 1), {iet::AffinePiece(Interval(0, Rational(1, 2)), 1, 0),
                                       iet::AffinePiece(Interval(Rational(3, 4), 1), 1, 0)});
  auto a = build_attractor(id, Interval(Rational(1, 2), Rational(3, 4)), 5);
  auto c = invariant_set_character(id, a, 5);
  EXPECT_TRUE(c == Character::Neither || c == Character::Unknown) << to_string(c);
}

TEST(BoxCounting, MiddleThirds) {
  auto a = middle_thirds(12);
  std::vector<double> scales;
  for (int k = 2; k <= 9; ++k) scales.push_back(std::pow(3.0, -k));
  auto b = box_counting_estimate(a, scales);
  EXPECT_NEAR(b.slope, std::log(2.0) / std::log(3.0), 0.05);
  EXPECT_TRUE(b.approx);
  EXPECT_EQ(b.log_count.size(), scales.size());
}

TEST(BoxCounting, FullIntervalHasDimensionOne) {
  CantorApprox full{Interval(0, 1), Interval(0, 1), 0, {}, Rational(1), std::nullopt};
  auto b = box_counting_estimate(full, {1e-1, 1e-2, 1e-3, 1e-4});
  EXPECT_NEAR(b.slope, 1.0, 0.02);
}

TEST(BoxCounting, DiscoEstimateIsInUnitInterval) {
  auto b = box_counting_estimate(theta_approx_20(), {1e-2, 1e-3, 1e-4, 1e-5});
  EXPECT_GT(b.slope, 0.0);
  EXPECT_LT(b.slope, 1.0);
  EXPECT_THROW(box_counting_estimate(theta_approx_20(), {1e-2, 1e-3}), Error);
}

TEST(ImageOf, PreimageInvertsImage) {
  auto f = theta_map();
  IntervalSet s({Interval(Rational(1, 10), Rational(3, 10)), Interval(Rational(7, 10), Rational(9, 10))});
  EXPECT_EQ(preimage_of(f, image_of(f, s)), s.intersect(f.domain()));
  EXPECT_EQ(image_of(f, IntervalSet(f.ambient())), f.image());
}
