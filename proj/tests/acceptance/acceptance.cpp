// Acceptance run: one PASS/FAIL line per criterion, with wall time against
// its limit. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "folia/attractor.hpp"
#include "folia/conjugacy.hpp"
#include "folia/error.hpp"
#include "folia/fixtures.hpp"
#include "folia/orbit.hpp"
#include "folia/rauzy.hpp"
#include "folia/sweep.hpp"
#include "folia/trace.hpp"
#include "support/generators.hpp"

using namespace folia;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure message; later checks still run.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (out_.pass) out_.detail = what;
    out_.pass = false;
    ++failures_;
  }
  Outcome done(const std::string& summary) {
    if (out_.pass) out_.detail = summary;
    else if (failures_ > 1) out_.detail += " (+" + std::to_string(failures_ - 1) + " more)";
    return out_;
  }

 private:
  Outcome out_;
  int failures_ = 0;
};

geom::TransversalSpec bottom_of_suspension(const geom::Surface& s) {
  const auto& p = s.polygons[0];
  geom::TransversalSpec spec;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.vertex(i).y.is_zero() && p.vertex(i + 1).y.is_zero()) spec.transversals.push_back({0, p.vertex(i), p.vertex(i + 1)});
  }
  spec.origin = spec.transversals.front().start.x;
  return spec;
}

Outcome suspension_round_trip() {
  Check c;
  gen::Rng rng(101);
  for (int i = 0; i < 20; ++i) {
    auto t = gen::random_bijective_aiet(rng, 6);
    auto s = geom::suspend(t);
    c.expect(geom::validate(s).ok, "suspension " + std::to_string(i) + " does not validate");
    auto back = geom::first_return_on_transversal(s, bottom_of_suspension(s), geom::Direction(0, 1), 4);
    c.expect(back.unresolved.empty() && back.map.canonical() == t.partial().canonical(),
             "map " + std::to_string(i) + " not recovered");
  }
  return c.done("20 random AIETs recovered exactly");
}

Outcome torus_closure() {
  Check c;
  gen::Rng rng(102);
  const auto torus = geom::torus_surface();
  std::uniform_int_distribution<int> pick(0, 39);
  int done = 0;
  while (done < 30) {
    const int p = pick(rng), q = pick(rng);
    if (q == 0 || p + q > 40 || std::gcd(p, q) != 1) continue;
    Rational x = gen::random_rational(rng, 0, 1, 9973), y = gen::random_rational(rng, 0, 1, 9967);
    // The leaf meets a lattice point exactly when q x - p y is an integer.
    const Rational k = Rational(q) * x - Rational(p) * y;
    if (Rational(k.floor()) == k) continue;
    auto tr = geom::trace_leaf(torus, {0, {x, y}}, geom::Direction(p, q), 200);
    std::ostringstream who;
    who << "(" << p << "," << q << ") from " << x << "," << y;
    c.expect(tr.status == geom::TraceStatus::Closed, who.str() + " did not close");
    c.expect(tr.events.size() == static_cast<std::size_t>(p + q), who.str() + ": wrong crossing count");
    if (tr.status == geom::TraceStatus::Closed) {
      c.expect(geom::holonomy_of_closed_trace(tr) == 1, who.str() + ": holonomy is not 1");
    }
    ++done;
  }
  return c.done("30 leaves closed after p+q crossings with holonomy 1");
}

iet::PartialAiet theta_d1() {
  return rv::disco_first_return(rv::direction_from_slope(gen::cantor_like_slope())).to_partial();
}

Interval hole_of(const iet::PartialAiet& f) { return IntervalSet(f.ambient()).subtract(f.image()).parts().at(0); }

Outcome disco_gap_measures() {
  Check c;
  const auto f = theta_d1();
  c.expect(f.ambient().length() == 1, "L does not have length 1");
  auto a = attractor::build_attractor(f, hole_of(f), 20);
  c.expect(!a.singular_encounter.has_value(), "unexpected singular encounter");
  std::map<int, Rational> level;
  for (const auto& g : a.gaps) level[g.n] += g.length();
  c.expect(level.size() == 20, "expected 20 gap levels");
  for (const auto& [n, len] : level) {
    c.expect(len == pow(Rational(2), -(n + 1)), "gap " + std::to_string(n) + " has length " + len.str());
  }
  c.expect(a.residual_measure == pow(Rational(2), -20), "residual " + a.residual_measure.str());
  return c.done("gap n = 2^-(n+1) for n < 20, residual 2^-20");
}

Outcome rv_oracle() {
  Check c;
  gen::Rng rng(104);
  int steps = 0;
  while (steps < 200) {
    rv::RvState state(gen::random_disco_type(rng));
    for (int k = 0; k < 8 && steps < 200; ++k) {
      auto r = rv::rv_step(state, rv::RvOptions{false});
      if (!std::holds_alternative<rv::Advance>(r)) break;
      const auto& adv = std::get<rv::Advance>(r);
      const auto& m = state.map;
      const auto& n = adv.next.map;
      const Interval kept = adv.letter == 'L' ? m.b().domain : m.a().domain;
      auto oracle = iet::first_return(m.to_partial(), IntervalSet(kept), 3);
      c.expect(oracle.unresolved.empty() && oracle.map == n.to_partial().canonical(),
               "step " + std::to_string(steps) + " differs from first_return");
      // The hole sits between the left end of f(A) and the right end of f(B).
      c.expect(n.a().image().lo() == m.a().image().lo() && n.b().image().hi() == m.b().image().hi(),
               "step " + std::to_string(steps) + " moved a kept endpoint");
      state = adv.next;
      ++steps;
    }
  }
  return c.done("200 steps equal to first_return, endpoints kept");
}

Outcome case_one() {
  Check c;
  rv::TwoBranchMap m(Interval(0, 1), Rational(1, 2), Rational(1, 4), Rational(3, 4), Rational(1, 4), Rational(0));
  auto rep = rv::classify(m);
  c.expect(rep.outcome == rv::Outcome::MorseSmale, "not Morse-Smale");
  c.expect(rep.step == 0, "stopped at step " + std::to_string(rep.step));
  c.expect(rep.cycle && rep.cycle->points == std::vector<Rational>{Rational(1, 5), Rational(4, 5)}, "wrong cycle");
  c.expect(rep.cycle && rep.cycle->multiplier == Rational(1, 16), "wrong multiplier");
  // f o f fixes 1/5 and 4/5.
  auto f = m.to_partial();
  c.expect(*f.evaluate(*f.evaluate(Rational(1, 5))) == Rational(1, 5), "1/5 is not fixed by f o f");
  return c.done("MorseSmale at step 0, cycle {1/5, 4/5}, multiplier 1/16");
}

// Finds an attracting cycle of f by iterating from x, without using the
// classification: the orbit settles near a period-P point, whose exact
// location is the fixed point of the affine branch of f^P there.
std::optional<std::pair<std::size_t, Rational>> brute_force_cycle(const iet::PartialAiet& f, Rational x) {
  for (int i = 0; i < 300; ++i) x = *f.evaluate(x);
  for (std::size_t period = 1; period <= 64; ++period) {
    Rational y = x, slope = 1;
    for (std::size_t k = 0; k < period; ++k) {
      slope *= f.pieces()[*f.piece_index(y)].slope;
      y = *f.evaluate(y);
    }
    if ((y - x).abs().to_double() > 1e-30) continue;
    // f^P(z) = slope (z - x) + y near x.
    const Rational fixed = (y - slope * x) / (1 - slope);
    Rational z = fixed;
    for (std::size_t k = 0; k < period; ++k) {
      auto next = f.evaluate(z);
      if (!next) return std::nullopt;
      z = *next;
    }
    if (z == fixed && slope < 1) return std::pair{period, slope};
  }
  return std::nullopt;
}

Outcome direction_sweep() {
  Check c;
  rv::ClassifyOptions opts;
  opts.max_depth = 60;
  auto result = rv::sweep_disco(rv::parse_grid("1/10:9/10:1000"), opts, 8);
  const auto& n = result.counts;
  c.expect(result.entries.size() == 1001, "wrong number of slopes");
  c.expect(n.non_standard == 0 && n.errors == 0, "non-standard states or errors in the sweep");
  std::vector<std::size_t> ms;
  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    const auto& e = result.entries[i];
    if (e.report && e.report->outcome == rv::Outcome::MorseSmale) ms.push_back(i);
  }
  gen::Rng rng(106);
  for (int k = 0; k < 10 && !ms.empty(); ++k) {
    const auto& e = result.entries[ms[std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(rng)]];
    auto f = rv::disco_first_return(rv::direction_from_slope(e.slope)).to_partial();
    auto found = brute_force_cycle(f, gen::random_rational(rng, 0, f.ambient().hi(), 1 << 20));
    c.expect(found.has_value(), "no attracting cycle found by iteration at slope " + e.slope.str());
    if (found) {
      c.expect(found->first == e.report->cycle->period && found->second == e.report->cycle->multiplier,
               "iteration disagrees with the report at slope " + e.slope.str());
    }
  }
  std::ostringstream s;
  s << "1001 slopes: " << n.morse_smale << " morse-smale, " << n.saddle_connection << " saddle, " << n.undetermined
    << " undetermined; 10 cycles confirmed by iteration";
  return c.done(s.str());
}

Outcome gutierrez() {
  Check c;
  const double r = 610.0 / 987.0;
  std::function<double(double)> rot = [r](double x) {
    double y = x + r;
    return y >= 1 ? y - 1 : y;
  };
  auto s = conj::sample_orbit<double>(rot, 0.0, 1.0, std::sqrt(2.0) - 1.0, 987, {1.0 - r});
  c.expect(s.points.size() == 987, "orbit repeated early");
  conj::ConjugacyOptions o;
  for (int e = 4; e <= 10; ++e) o.betas.push_back(std::ldexp(1.0, -e));
  auto approx = conj::build_h(s, o);
  auto report = conj::verify_displacement(approx, rot, conj::adjacent_pairs(approx), 1e-3);
  c.expect(report.max_violation <= 1e-3, "Eq (12) violation " + std::to_string(report.max_violation));
  auto ext = conj::extract_iet(approx, rot, 1e-3);
  c.expect(ext.map.pieces().size() == 2, "extracted " + std::to_string(ext.map.pieces().size()) + " pieces");
  double err = 1;
  for (const auto& p : ext.map.pieces()) {
    const double t = p.offset.to_double();
    err = std::min({err, std::fabs(t - r), std::fabs(t + 1 - r)});
  }
  c.expect(err <= 1e-3, "translation error " + std::to_string(err));
  std::ostringstream d;
  d << "violation " << report.max_violation << ", translation error " << err;
  return c.done(d.str());
}

Outcome invariant_suites() {
  Check c;
  gen::Rng rng(108);
  // Bijectivity certificates and inverse round trips.
  int points = 0;
  for (int m = 0; m < 200; ++m) {
    auto t = gen::random_bijective_aiet(rng, 6);
    c.expect(iet::check_bijective(t).bijective, "random map not certified");
    if (points >= 1000) continue;
    auto inv = iet::invert(t);
    for (int i = 0; i < 50; ++i, ++points) {
      Rational x = gen::random_rational(rng, 0, 1, 1 << 30);
      c.expect(*inv.evaluate(*t.evaluate(x)) == x && *t.evaluate(*inv.evaluate(x)) == x, "inverse round trip");
    }
  }
  iet::Aiet bad(Interval(0, 1), {iet::AffinePiece(Interval(0, Rational(1, 2)), 2, 0),
                                 iet::AffinePiece(Interval(Rational(1, 2), 1), Rational(1, 2), Rational(-1, 4))});
  c.expect(!iet::check_bijective(bad).bijective, "overlapping map certified");

  // Holonomy along closed traces does not depend on the base point.
  std::vector<geom::LeafTrace> closed;
  const auto torus = geom::torus_surface();
  for (int p = 1; closed.size() < 17; ++p) {
    closed.push_back(geom::trace_leaf(torus, {0, {Rational(1, 101), Rational(1, 103)}}, geom::Direction(p, p + 1), 100));
  }
  const auto disco = geom::disco_surface();
  closed.push_back(geom::trace_leaf(disco, {0, {Rational(1, 20), 0}}, geom::Direction(1, 1), 100));
  closed.push_back(geom::trace_leaf(disco, {0, {Rational(13, 60), 0}}, geom::Direction(1, 2), 100));
  closed.push_back(geom::trace_leaf(disco, {0, {Rational(1, 420), 0}}, geom::Direction(2, 3), 100));
  int affine = 0;
  for (const auto& tr : closed) {
    c.expect(tr.status == geom::TraceStatus::Closed, "trace did not close");
    if (tr.status != geom::TraceStatus::Closed) continue;
    const Rational rho = geom::holonomy_of_closed_trace(tr);
    for (std::size_t shift = 0; shift < tr.events.size(); ++shift) {
      Rational r = 1;
      for (std::size_t i = 0; i < tr.events.size(); ++i) r *= tr.events[(i + shift) % tr.events.size()].lambda;
      c.expect(r == rho, "holonomy depends on the base point");
    }
    if (rho != 1) ++affine;
  }
  c.expect(affine == 3, "expected three affine cylinders");

  // Gap disjointness and measure identity at every depth.
  const auto f = theta_d1();
  const Interval hole = hole_of(f);
  for (int depth = 1; depth <= 20; ++depth) {
    auto a = attractor::build_attractor(f, hole, depth);
    Rational total = a.residual_measure;
    for (std::size_t i = 0; i < a.gaps.size(); ++i) {
      total += a.gaps[i].length();
      if (i > 0) c.expect(a.gaps[i - 1].hi <= a.gaps[i].lo, "overlapping gaps at depth " + std::to_string(depth));
    }
    c.expect(total == a.L.length(), "measure identity fails at depth " + std::to_string(depth));
  }

  // Total mass of the atomic measures.
  for (const Rational& beta : {Rational(1, 2), Rational(1, 3), Rational(1, 16), Rational(1, 1024), Rational(5, 11)}) {
    auto m = conj::make_measure(beta, 500);
    c.expect(m.finite_mass() + m.tail() == 1, "mass identity fails at beta " + beta.str());
  }
  return c.done("certificates, 1000 inverse round trips, 20 holonomies, 20 attractor depths, 5 masses");
}

Outcome characterization() {
  Check c;
  const Rational slope = gen::cantor_like_slope();
  c.expect(rv::classify(rv::disco_first_return(rv::direction_from_slope(slope))).outcome ==
               rv::Outcome::Undetermined,
           "direction is not undetermined at depth 60");
  const auto f = theta_d1();
  auto d1 = attractor::build_attractor(f, hole_of(f), 20);
  auto c1 = attractor::invariant_set_character(f, d1, 20);
  c.expect(c1 == attractor::Character::Attracting, std::string("D1 side is ") + attractor::to_string(c1));

  const auto g = rv::disco_d2_first_return(rv::direction_from_slope(slope));
  const auto g_inv = iet::invert_partial(g);
  auto d2 = attractor::build_attractor(g_inv, hole_of(g_inv), 20);
  auto c2 = attractor::invariant_set_character(g, d2, 20);
  c.expect(c2 == attractor::Character::Repelling, std::string("D2 side is ") + attractor::to_string(c2));
  return c.done("D1 attracting, D2 repelling at slope 93/140 - 2^-200");
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 for no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "suspension round trip", 10, suspension_round_trip},
      {2, "torus closure law", 5, torus_closure},
      {3, "Disco gap measures", 2, disco_gap_measures},
      {4, "RV oracle equivalence", 30, rv_oracle},
      {5, "case-1 detection", 0, case_one},
      {6, "direction sweep", 60, direction_sweep},
      {7, "Gutierrez construction", 10, gutierrez},
      {8, "invariant suites", 0, invariant_suites},
      {9, "attracting/repelling characterization", 30, characterization},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.limit_seconds > 0 && secs > cr.limit_seconds) {
      o.pass = false;
      o.detail += " (over time limit)";
    }
    char timing[64];
    if (cr.limit_seconds > 0) std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, cr.limit_seconds);
    else std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::printf("criterion %d %s: %s [%s] %s\n", cr.id, cr.name, o.pass ? "PASS" : "FAIL", timing, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed;
}
