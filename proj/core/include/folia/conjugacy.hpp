#pragma once

// Numerical Gutierrez construction: atomic measures on a sampled forward
// orbit, the monotone map h built from them, the displacement check, and
// extraction of a standard interval exchange conjugate to the sampled map.
//
// Unlike the rest of the library this module works in floating point, since
// the interesting maps are approximations at irrational directions. The
// exact-rational instantiations exist for the mass identities.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <unordered_set>
#include <vector>

#include "folia/aiet.hpp"
#include "folia/error.hpp"
#include "folia/rational.hpp"

namespace folia::conj {

// Forward orbit p_1 .. p_N of T on the circle [lo, hi).
template <class Num>
struct BasicOrbitSample {
  std::function<Num(const Num&)> map;
  Num lo{0};
  Num hi{1};
  std::vector<Num> singular;
  std::vector<Num> points;
  Num max_gap{0};

  Num length() const { return hi - lo; }
  // Position of x measured counterclockwise from `origin`, in [0, length).
  Num position(const Num& x, const Num& origin) const {
    Num d = x - origin;
    while (d < Num(0)) d += length();
    while (d >= length()) d -= length();
    return d;
  }
};

using OrbitSample = BasicOrbitSample<double>;
using ExactOrbitSample = BasicOrbitSample<Rational>;

template <class Num>
Num largest_circular_gap(const std::vector<Num>& pts, const Num& lo, const Num& hi, Num* gap_start = nullptr) {
  if (pts.empty()) {
    if (gap_start) *gap_start = lo;
    return hi - lo;
  }
  std::vector<Num> s(pts);
  std::sort(s.begin(), s.end());
  Num best = s.front() + (hi - lo) - s.back();
  Num start = s.back();
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] - s[i - 1] > best) {
      best = s[i] - s[i - 1];
      start = s[i - 1];
    }
  }
  if (gap_start) *gap_start = start;
  return best;
}

// Iterates T from p1 for at most n points. Stops early if the orbit repeats
// a point, which happens for periodic orbits of exactly representable maps.
template <class Num>
BasicOrbitSample<Num> sample_orbit(std::function<Num(const Num&)> map, Num lo, Num hi, Num p1, std::size_t n,
                                   std::vector<Num> singular = {}) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "empty ambient circle");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "orbit length must be positive");
  BasicOrbitSample<Num> s{std::move(map), lo, hi, std::move(singular), {}, Num(0)};
  std::vector<Num> seen;
  Num x = p1;
  for (std::size_t i = 0; i < n; ++i) {
    if (x < lo || x >= hi) throw Error(ErrorCode::OutOfDomain, "orbit left the ambient circle");
    if (std::find(seen.begin(), seen.end(), x) != seen.end()) break;
    seen.push_back(x);
    s.points.push_back(x);
    if (i + 1 < n) x = s.map(x);
  }
  s.max_gap = largest_circular_gap(s.points, lo, hi);
  return s;
}

// Weights beta (1 - beta)^(i-1) on p_1 .. p_N.
template <class Num>
struct AtomicMeasure {
  Num beta;
  std::size_t n;

  Num ratio() const { return Num(1) - beta; }
  Num weight(std::size_t i) const { return beta * power(ratio(), i - 1); }
  Num tail() const { return power(ratio(), n); }
  Num finite_mass() const {
    Num total(0), w = beta;
    for (std::size_t i = 1; i <= n; ++i, w *= ratio()) total += w;
    return total;
  }

  static Num power(const Num& b, std::size_t e) {
    if constexpr (std::is_same_v<Num, double>) {
      return std::pow(b, static_cast<double>(e));
    } else {
      return pow(b, static_cast<long>(e));
    }
  }
};

template <class Num>
AtomicMeasure<Num> make_measure(const Num& beta, std::size_t n) {
  if (!(beta > Num(0)) || beta > Num(1) / Num(2)) {
    throw Error(ErrorCode::InvalidArgument, "beta must lie in (0, 1/2]");
  }
  return AtomicMeasure<Num>{beta, n};
}

// Mass of the orbit points strictly inside the counterclockwise arc (a, b).
template <class Num>
Num measure_of_interval(const AtomicMeasure<Num>& m, const BasicOrbitSample<Num>& s, const Num& a, const Num& b) {
  if (a == b) throw Error(ErrorCode::InvalidArgument, "degenerate arc");
  const Num span = s.position(b, a);
  Num total(0), w = m.beta;
  const std::size_t n = std::min(m.n, s.points.size());
  for (std::size_t i = 0; i < n; ++i, w *= m.ratio()) {
    Num t = s.position(s.points[i], a);
    if (t > Num(0) && t < span) total += w;
  }
  return total;
}

struct ConjugacyOptions {
  std::vector<double> betas;       // strictly decreasing, each in (0, 1/2]
  double density_threshold = 1e-2;  // maxGap allowed, as a fraction of the circle length
};

std::vector<double> default_betas();  // 2^-4 .. 2^-12

struct ConjugacyApprox {
  double lambda0 = 0;
  std::vector<double> betas;
  // h[k][i] = normalized mass of (lambda0, p_i) for betas[k]; values lie in [0, 1).
  std::vector<std::vector<double>> h;
  // cauchy[k][i] = |h[k][i] - h[k+1][i]|.
  std::vector<std::vector<double>> cauchy;
  std::vector<double> cauchy_max;
  bool degenerate = false;  // fewer than two sample points
  double nearest_singular_orbit_distance = INFINITY;

  // Orbit order sorted by position from lambda0.
  std::vector<std::size_t> order;
  std::vector<double> sorted_positions;
  const OrbitSample* sample = nullptr;

  // sup of h(p_i) over orbit points in (lambda0, x), at betas[k]; the last
  // index is the extrapolated value.
  double at(double x, std::size_t k) const;
  double at(double x) const { return at(x, betas.size() - 1); }
  const std::vector<double>& extrapolated() const { return h.back(); }
};

// The sample must outlive the returned approximation.
ConjugacyApprox build_h(const OrbitSample& sample, const ConjugacyOptions& opts);

struct DisplacementReport {
  std::vector<double> max_violation_per_beta;
  double max_violation = 0;  // at the smallest beta
  bool monotone = true;      // violations non-increasing as beta decreases
  bool pass = false;
  std::size_t pairs = 0;
};

// Pairs of orbit points adjacent in circular order with no singular point
// between them, both of which have sampled successors.
std::vector<std::pair<double, double>> adjacent_pairs(const ConjugacyApprox& approx);

DisplacementReport verify_displacement(const ConjugacyApprox& approx, const std::function<double(double)>& t,
                                       const std::vector<std::pair<double, double>>& pairs, double tol);

struct ExtractionQuality {
  DisplacementReport displacement;
  std::vector<double> breakpoints;   // least-squares estimate, in h coordinates
  std::vector<double> translations;  // per-piece medians
  double fit_residual = 0;
  double max_translation_snap_error = 0;
  bool bijective = false;
};

struct ExtractedIet {
  iet::Aiet map;
  ExtractionQuality quality;
};

// Throws DisplacementCheckFailed unless verify_displacement passes at
// snap_tolerance, or if the snapped map fails to be a bijection.
ExtractedIet extract_iet(const ConjugacyApprox& approx, const std::function<double(double)>& t,
                         double snap_tolerance);

}  // namespace folia::conj
