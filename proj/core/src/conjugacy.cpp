#include "folia/conjugacy.hpp"

#include <Eigen/Dense>
#include <numeric>
#include <string>

namespace folia::conj {

namespace {

double circular(double d) {
  d = std::fmod(std::fabs(d), 1.0);
  return std::min(d, 1.0 - d);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

}  // namespace

std::vector<double> default_betas() {
  std::vector<double> b;
  for (int e = 4; e <= 12; ++e) b.push_back(std::ldexp(1.0, -e));
  return b;
}

double ConjugacyApprox::at(double x, std::size_t k) const {
  const double pos = sample->position(x, lambda0);
  auto it = std::upper_bound(sorted_positions.begin(), sorted_positions.end(), pos);
  if (it == sorted_positions.begin()) return 0.0;
  return h[k][order[static_cast<std::size_t>(it - sorted_positions.begin()) - 1]];
}

ConjugacyApprox build_h(const OrbitSample& sample, const ConjugacyOptions& opts) {
  const std::size_t n = sample.points.size();
  if (n == 0) throw Error(ErrorCode::OrbitTooShort, "empty orbit sample");
  if (opts.betas.empty()) throw Error(ErrorCode::InvalidArgument, "no beta values given");
  for (std::size_t k = 0; k < opts.betas.size(); ++k) {
    const double b = opts.betas[k];
    if (!(b > 0 && b <= 0.5)) throw Error(ErrorCode::InvalidArgument, "beta must lie in (0, 1/2]");
    if (k > 0 && !(b < opts.betas[k - 1])) throw Error(ErrorCode::InvalidArgument, "betas must decrease");
  }
  if (sample.max_gap > opts.density_threshold * sample.length()) {
    throw Error(ErrorCode::OrbitTooShort, "largest orbit gap " + std::to_string(sample.max_gap) +
                                              " exceeds the density threshold");
  }

  ConjugacyApprox a;
  a.sample = &sample;
  a.betas = opts.betas;
  a.degenerate = n < 2;
  double gap_start = 0;
  const double gap = largest_circular_gap(sample.points, sample.lo, sample.hi, &gap_start);
  a.lambda0 = sample.lo + sample.position(gap_start + gap / 2, sample.lo);

  a.order.resize(n);
  std::iota(a.order.begin(), a.order.end(), std::size_t{0});
  std::vector<double> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[i] = sample.position(sample.points[i], a.lambda0);
  std::sort(a.order.begin(), a.order.end(), [&](std::size_t i, std::size_t j) { return pos[i] < pos[j]; });
  for (std::size_t j : a.order) a.sorted_positions.push_back(pos[j]);

  for (double beta : opts.betas) {
    const auto m = make_measure(beta, n);
    std::vector<double> w(n);
    double wi = beta;
    for (std::size_t i = 0; i < n; ++i, wi *= m.ratio()) w[i] = wi;
    const double mass = 1.0 - m.tail();
    std::vector<double> hk(n);
    double acc = 0;
    for (std::size_t j : a.order) {
      hk[j] = acc / mass;
      acc += w[j];
    }
    a.h.push_back(std::move(hk));
  }
  for (std::size_t k = 0; k + 1 < a.h.size(); ++k) {
    std::vector<double> c(n);
    double mx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = std::fabs(a.h[k][i] - a.h[k + 1][i]);
      mx = std::max(mx, c[i]);
    }
    a.cauchy.push_back(std::move(c));
    a.cauchy_max.push_back(mx);
  }
  for (double z : sample.singular) {
    for (double p : sample.points) {
      double d = sample.position(p, z);
      a.nearest_singular_orbit_distance = std::min({a.nearest_singular_orbit_distance, d, sample.length() - d});
    }
  }
  return a;
}

std::vector<std::pair<double, double>> adjacent_pairs(const ConjugacyApprox& approx) {
  const auto& s = *approx.sample;
  const std::size_t n = s.points.size();
  std::vector<double> cuts;
  for (double z : s.singular) cuts.push_back(s.position(z, approx.lambda0));
  std::vector<std::pair<double, double>> out;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const std::size_t a = approx.order[j], c = approx.order[j + 1];
    if (a + 1 >= n || c + 1 >= n) continue;
    const double pa = approx.sorted_positions[j], pc = approx.sorted_positions[j + 1];
    bool cut = false;
    for (double z : cuts) cut = cut || (pa < z && z <= pc);
    if (!cut) out.emplace_back(s.points[a], s.points[c]);
  }
  return out;
}

DisplacementReport verify_displacement(const ConjugacyApprox& approx, const std::function<double(double)>& t,
                                       const std::vector<std::pair<double, double>>& pairs, double tol) {
  DisplacementReport rep;
  rep.pairs = pairs.size();
  for (std::size_t k = 0; k < approx.betas.size(); ++k) {
    double worst = 0;
    for (const auto& [a, c] : pairs) {
      const double before = circular(approx.at(a, k) - approx.at(c, k));
      const double after = circular(approx.at(t(a), k) - approx.at(t(c), k));
      worst = std::max(worst, std::fabs(before - after));
    }
    if (!rep.max_violation_per_beta.empty() && worst > rep.max_violation_per_beta.back()) rep.monotone = false;
    rep.max_violation_per_beta.push_back(worst);
  }
  rep.max_violation = rep.max_violation_per_beta.back();
  rep.pass = rep.max_violation <= tol;
  return rep;
}

ExtractedIet extract_iet(const ConjugacyApprox& approx, const std::function<double(double)>& t,
                         double snap_tolerance) {
  ExtractionQuality q;
  q.displacement = verify_displacement(approx, t, adjacent_pairs(approx), snap_tolerance);
  if (!q.displacement.pass) {
    throw Error(ErrorCode::DisplacementCheckFailed,
                "displacement violation " + std::to_string(q.displacement.max_violation) + " exceeds tolerance " +
                    std::to_string(snap_tolerance));
  }
  const auto& s = *approx.sample;
  const auto& H = approx.extrapolated();
  const std::size_t n = s.points.size();

  std::vector<double> cuts;
  for (double z : s.singular) cuts.push_back(approx.at(z));
  std::sort(cuts.begin(), cuts.end());

  // Group orbit points, in h order, into pieces of constant displacement.
  struct Group {
    std::vector<double> xs, ds;
  };
  std::vector<Group> groups;
  double prev_x = -1, prev_d = 0;
  for (std::size_t i : approx.order) {
    if (i + 1 >= n) continue;
    const double x = H[i], d = H[i + 1] - H[i];
    bool split = groups.empty() || std::fabs(d - prev_d) > 0.5;
    for (double c : cuts) split = split || (prev_x < c && c <= x);
    if (split) groups.emplace_back();
    groups.back().xs.push_back(x);
    groups.back().ds.push_back(d);
    prev_x = x;
    prev_d = d;
  }
  if (groups.empty()) throw Error(ErrorCode::OrbitTooShort, "no displacement samples");
  std::vector<Group> merged;
  for (auto& g : groups) {
    if (!merged.empty() && std::fabs(median(merged.back().ds) - median(g.ds)) <= snap_tolerance) {
      merged.back().xs.insert(merged.back().xs.end(), g.xs.begin(), g.xs.end());
      merged.back().ds.insert(merged.back().ds.end(), g.ds.begin(), g.ds.end());
    } else {
      merged.push_back(std::move(g));
    }
  }
  const std::size_t m = merged.size();
  for (const auto& g : merged) q.translations.push_back(median(g.ds));

  // Image order from where each group lands.
  std::vector<std::size_t> img(m);
  std::iota(img.begin(), img.end(), std::size_t{0});
  std::vector<double> land(m);
  for (std::size_t k = 0; k < m; ++k) {
    land[k] = INFINITY;
    for (std::size_t j = 0; j < merged[k].xs.size(); ++j) land[k] = std::min(land[k], merged[k].xs[j] + merged[k].ds[j]);
  }
  std::sort(img.begin(), img.end(), [&](std::size_t a, std::size_t b) { return land[a] < land[b]; });
  std::vector<std::size_t> rank(m);
  for (std::size_t r = 0; r < m; ++r) rank[img[r]] = r;

  // Lengths from: total 1, image start = domain start + translation,
  // and the observed midpoints between neighbouring groups.
  const Eigen::Index rows = static_cast<Eigen::Index>(1 + m + (m - 1));
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(m));
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  Eigen::Index r = 0;
  for (std::size_t k = 0; k < m; ++k) A(r, static_cast<Eigen::Index>(k)) = 10.0;
  b(r++) = 10.0;
  for (std::size_t k = 0; k < m; ++k, ++r) {
    for (std::size_t i = 0; i < k; ++i) A(r, static_cast<Eigen::Index>(i)) += 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (rank[i] < rank[k]) A(r, static_cast<Eigen::Index>(i)) -= 1.0;
    }
    b(r) = -q.translations[k];
  }
  for (std::size_t k = 1; k < m; ++k, ++r) {
    for (std::size_t i = 0; i < k; ++i) A(r, static_cast<Eigen::Index>(i)) = 1.0;
    b(r) = (merged[k - 1].xs.back() + merged[k].xs.front()) / 2;
  }
  const Eigen::VectorXd len = A.colPivHouseholderQr().solve(b);
  q.fit_residual = (A * len - b).norm();

  // Each translation is a difference of two cumulative sums, so this radius
  // keeps snapped translations within snap_tolerance of the fitted ones.
  const double radius = snap_tolerance / static_cast<double>(2 * m);
  std::vector<Rational> bounds{Rational(0)};
  double cum = 0;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    cum += len(static_cast<Eigen::Index>(k));
    q.breakpoints.push_back(cum);
    Rational snapped = Rational::simplest_between(Rational::from_double(cum - radius),
                                                  Rational::from_double(cum + radius));
    if (snapped <= bounds.back() || snapped >= Rational(1)) {
      throw Error(ErrorCode::DisplacementCheckFailed, "snapped breakpoints are not increasing");
    }
    bounds.push_back(snapped);
  }
  bounds.push_back(Rational(1));

  std::vector<Rational> img_start(m);
  Rational acc;
  for (std::size_t k : img) {
    img_start[k] = acc;
    acc += bounds[k + 1] - bounds[k];
  }
  std::vector<iet::AffinePiece> pieces;
  for (std::size_t k = 0; k < m; ++k) {
    Rational tr = img_start[k] - bounds[k];
    q.max_translation_snap_error = std::max(q.max_translation_snap_error, std::fabs(tr.to_double() - q.translations[k]));
    pieces.emplace_back(Interval(bounds[k], bounds[k + 1]), Rational(1), tr);
  }
  iet::Aiet map(Interval(0, 1), std::move(pieces));
  q.bijective = iet::check_bijective(map).bijective;
  if (!q.bijective) throw Error(ErrorCode::DisplacementCheckFailed, "extracted map is not a bijection");
  return ExtractedIet{std::move(map), std::move(q)};
}

}  // namespace folia::conj
