#pragma once

// Random inputs shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "folia/aiet.hpp"
#include "folia/rauzy.hpp"

namespace folia::gen {

using Rng = std::mt19937_64;

// Uniform rational in [lo, hi) with denominator `den`.
inline Rational random_rational(Rng& rng, const Rational& lo, const Rational& hi, long den = 1 << 20) {
  std::uniform_int_distribution<long> pick(0, den - 1);
  return lo + (hi - lo) * Rational(pick(rng), den);
}

// `k` distinct sorted cut points strictly inside (0, 1) with denominator den.
inline std::vector<Rational> random_cuts(Rng& rng, int k, long den) {
  std::vector<long> nums(static_cast<std::size_t>(den - 1));
  std::iota(nums.begin(), nums.end(), 1L);
  std::shuffle(nums.begin(), nums.end(), rng);
  nums.resize(static_cast<std::size_t>(k));
  std::sort(nums.begin(), nums.end());
  std::vector<Rational> out;
  for (long n : nums) out.emplace_back(n, den);
  return out;
}

// Bijective AIET on [0, 1) with at most `max_pieces` pieces: random domain
// and image partitions glued by a random permutation.
inline iet::Aiet random_bijective_aiet(Rng& rng, int max_pieces) {
  std::uniform_int_distribution<int> count(1, max_pieces);
  const int n = count(rng);
  auto dom = random_cuts(rng, n - 1, 97);
  auto img = random_cuts(rng, n - 1, 89);
  dom.insert(dom.begin(), Rational(0));
  dom.push_back(Rational(1));
  img.insert(img.begin(), Rational(0));
  img.push_back(Rational(1));
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<iet::AffinePiece> pieces;
  for (int i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(perm[static_cast<std::size_t>(i)]);
    const Rational a = dom[static_cast<std::size_t>(i)], b = dom[static_cast<std::size_t>(i) + 1];
    const Rational c = img[j], d = img[j + 1];
    const Rational slope = (d - c) / (b - a);
    pieces.emplace_back(Interval(a, b), slope, c - slope * a);
  }
  return iet::Aiet(Interval(0, 1), std::move(pieces));
}

// Disco-type two-branch map on [0, 1): both branches contract, f(B) starts at
// 0 and f(A) ends at 1, so the hole sits between the images.
inline rv::TwoBranchMap random_disco_type(Rng& rng) {
  while (true) {
    const Rational p = random_rational(rng, Rational(1, 50), Rational(49, 50), 1000);
    const Rational sa = random_rational(rng, Rational(1, 20), Rational(1), 1000);
    const Rational sb = random_rational(rng, Rational(1, 20), Rational(1), 1000);
    const Rational la = sa * p, lb = sb * (1 - p);
    if (la + lb >= 1 || la.is_zero() || lb.is_zero()) continue;
    return rv::TwoBranchMap(Interval(0, 1), p, sa, 1 - la, sb, -sb * p);
  }
}

// Slope 93/140 - 2^-200 of a Disco direction whose induction word is L R L^58
// after 60 steps: an exact rational stand-in for a Cantor-like direction.
inline Rational cantor_like_slope() {
  BigInt two200 = 1;
  two200 <<= 200;
  return Rational(93, 140) - Rational(BigInt(1), two200);
}

}  // namespace folia::gen
