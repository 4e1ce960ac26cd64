#include "folia/orbit.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "folia/error.hpp"

namespace folia::iet {

OrbitRecord iterate(const PartialAiet& t, const Rational& x, std::size_t budget) {
  if (budget < 1) throw Error(ErrorCode::InvalidArgument, "budget must be at least 1");
  OrbitRecord rec{x, {x}, BudgetExhausted{}};
  std::unordered_map<Rational, std::size_t> seen{{x, 0}};
  std::vector<std::size_t> piece_of;
  Rational cur = x;
  for (std::size_t step = 0; step < budget; ++step) {
    auto idx = t.piece_index(cur);
    if (!idx) {
      rec.status = LeftDomain{step};
      return rec;
    }
    piece_of.push_back(*idx);
    cur = t.pieces()[*idx].apply(cur);
    auto [it, fresh] = seen.emplace(cur, rec.points.size());
    if (!fresh) {
      std::size_t entry = it->second;
      Rational mult = 1;
      for (std::size_t i = entry; i < piece_of.size(); ++i) mult *= t.pieces()[piece_of[i]].slope;
      rec.status = Periodic{entry, rec.points.size() - entry, mult};
      return rec;
    }
    rec.points.push_back(cur);
  }
  return rec;
}

const char* to_string(CycleKind k) {
  switch (k) {
    case CycleKind::Neutral: return "neutral";
    case CycleKind::Attracting: return "attracting";
    case CycleKind::Repelling: return "repelling";
  }
  return "?";
}

namespace {

CycleKind kind_of(const Rational& m) {
  if (m == 1) return CycleKind::Neutral;
  return m < 1 ? CycleKind::Attracting : CycleKind::Repelling;
}

// Re-evaluates the cycle through x and returns it if x is genuinely periodic
// with the given period.
std::optional<Cycle> verify_cycle(const PartialAiet& t, const Rational& x, std::size_t period) {
  std::vector<Rational> pts{x};
  Rational mult = 1;
  Rational cur = x;
  for (std::size_t i = 0; i < period; ++i) {
    auto idx = t.piece_index(cur);
    if (!idx) return std::nullopt;
    mult *= t.pieces()[*idx].slope;
    cur = t.pieces()[*idx].apply(cur);
    if (i + 1 < period) {
      if (cur == x) return std::nullopt;
      pts.push_back(cur);
    }
  }
  if (cur != x) return std::nullopt;
  auto smallest = std::min_element(pts.begin(), pts.end());
  std::rotate(pts.begin(), smallest, pts.end());
  return Cycle{std::move(pts), period, mult, kind_of(mult)};
}

// Looks for an eventually periodic itinerary at the tail of a finite orbit and
// solves the fixed point of the composed branch exactly.
std::optional<Cycle> cycle_from_itinerary(const PartialAiet& t, const std::vector<std::size_t>& itin,
                                          const std::vector<Rational>& pts) {
  const std::size_t n = itin.size();
  for (std::size_t k = 1; 3 * k <= n; ++k) {
    bool repeats = true;
    for (std::size_t j = 0; j < 2 * k && repeats; ++j) repeats = itin[n - 1 - j] == itin[n - 1 - j - k];
    if (!repeats) continue;
    Rational lambda = 1, c = 0;
    for (std::size_t j = n - k; j < n; ++j) {
      const auto& p = t.pieces()[itin[j]];
      lambda = p.slope * lambda;
      c = p.slope * c + p.offset;
    }
    if (lambda == 1) return std::nullopt;
    Rational fixed = c / (1 - lambda);
    (void)pts;
    if (auto cyc = verify_cycle(t, fixed, k)) return cyc;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Cycle> detect_periodic(const PartialAiet& t, const PeriodicSearch& opts) {
  std::vector<Rational> seeds;
  if (opts.seed_piece_midpoints) {
    for (const auto& p : t.pieces()) seeds.push_back(p.domain.midpoint());
  }
  seeds.insert(seeds.end(), opts.seeds.begin(), opts.seeds.end());

  std::vector<Cycle> found;
  std::set<Rational> known;  // every point of every reported cycle
  auto record = [&](Cycle c) {
    if (known.count(c.points.front())) return;
    for (const auto& q : c.points) known.insert(q);
    found.push_back(std::move(c));
  };

  for (const auto& s : seeds) {
    if (!t.piece_index(s)) continue;
    OrbitRecord rec = iterate(t, s, opts.budget);
    if (auto* per = std::get_if<Periodic>(&rec.status)) {
      if (auto c = verify_cycle(t, rec.points[per->entry], per->period)) record(std::move(*c));
      continue;
    }
    if (!std::holds_alternative<BudgetExhausted>(rec.status)) continue;
    std::vector<std::size_t> itin;
    itin.reserve(rec.points.size());
    for (const auto& q : rec.points) {
      auto idx = t.piece_index(q);
      if (!idx) break;
      itin.push_back(*idx);
    }
    if (auto c = cycle_from_itinerary(t, itin, rec.points)) record(std::move(*c));
  }
  std::sort(found.begin(), found.end(),
            [](const Cycle& a, const Cycle& b) { return a.points.front() < b.points.front(); });
  return found;
}

std::optional<Cycle> cycle_through(const PartialAiet& t, const Rational& x, std::size_t budget) {
  Rational cur = x;
  for (std::size_t k = 1; k <= budget; ++k) {
    auto next = t.evaluate(cur);
    if (!next) return std::nullopt;
    cur = std::move(*next);
    if (cur == x) return verify_cycle(t, x, k);
  }
  return std::nullopt;
}

KeaneEvidence keane_evidence(const Aiet& e, std::size_t depth) {
  if (!e.is_iet()) throw Error(ErrorCode::InvalidArgument, "keane_evidence needs an IET (all slopes 1)");
  std::vector<Rational> disc;
  const auto& ps = e.pieces();
  for (std::size_t i = 1; i < ps.size(); ++i) {
    const Rational& a = ps[i].domain.lo();
    if (ps[i - 1].apply(a) != ps[i].apply(a)) disc.push_back(a);
  }
  std::set<Rational> disc_set(disc.begin(), disc.end());
  KeaneEvidence ev;
  for (const auto& d : disc) {
    Rational cur = d;
    for (std::size_t k = 1; k <= depth; ++k) {
      cur = *e.evaluate(cur);
      if (disc_set.count(cur)) {
        ev.collisions.push_back({d, cur, k});
        break;
      }
    }
  }
  ev.idoc_holds = ev.collisions.empty();
  return ev;
}

}  // namespace folia::iet
