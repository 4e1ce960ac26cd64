#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "folia/error.hpp"
#include "folia/trace.hpp"

namespace folia::geom {

namespace {

// A family of parallel leaves: for t in [t0, t1) the leaf passes through
// base + t * dir in the chart of `polygon`, moving in the flow direction.
struct Beam {
  Rational t0, t1;
  int polygon;
  Point2 base, dir;
  int src_edge;   // edge the beam just entered through, or -1
  int src_chord;  // chord transversal the beam starts on, or -1
  std::size_t steps;
};

struct Segment {
  Point2 base, dir;  // affine image of the parameter t
};

struct Prepared {
  Transversal tv;
  Point2 w;        // end - start
  Rational len;    // exact arc length
  Rational offset; // parameter at start
  int edge = -1;   // edge holding the transversal, or -1 for a chord
};

bool on_closed_segment(const Point2& a, const Point2& b, const Point2& z) {
  if (!cross(b - a, z - a).is_zero()) return false;
  Rational s = dot(z - a, b - a) / dot(b - a, b - a);
  return s.sign() >= 0 && s <= 1;
}

int orient(const Point2& p, const Point2& q, const Point2& r) { return cross(q - p, r - p).sign(); }

// Do the open segments (a,b) and (c,d) share a point?
bool open_segments_meet(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && o2 == 0) {
    // Collinear: compare parameter ranges along (a,b).
    Point2 w = b - a;
    Rational s0 = dot(c - a, w) / dot(w, w), s1 = dot(d - a, w) / dot(w, w);
    Rational lo = min(s0, s1), hi = max(s0, s1);
    return max(lo, Rational(0)) < min(hi, Rational(1));
  }
  auto strictly_on = [](const Point2& p, const Point2& q, const Point2& z) {
    if (!cross(q - p, z - p).is_zero()) return false;
    Rational s = dot(z - p, q - p) / dot(q - p, q - p);
    return s.sign() > 0 && s < 1;
  };
  return strictly_on(a, b, c) || strictly_on(a, b, d) || strictly_on(c, d, a) || strictly_on(c, d, b);
}

class Tracer {
 public:
  Tracer(const Surface& s, const TransversalSpec& spec, const Direction& dir, std::size_t budget)
      : s_(s), idx_(s), d_(dir.vec()), budget_(budget) {
    prepare(spec);
  }

  iet::PartialAiet run(std::vector<Interval>& unresolved) {
    for (std::size_t k = 0; k < tv_.size(); ++k) seed(static_cast<int>(k));
    while (!queue_.empty()) {
      Beam b = std::move(queue_.front());
      queue_.pop_front();
      propagate(b);
    }
    unresolved = IntervalSet(unresolved_).parts();
    return iet::PartialAiet(Interval(tv_.front().offset, total_end_), out_).canonical();
  }

 private:
  void prepare(const TransversalSpec& spec) {
    if (spec.transversals.empty()) throw Error(ErrorCode::InvalidTransversal, "no transversal given");
    Rational off = spec.origin;
    auto cls = validate(s_);
    if (!cls.ok) throw Error(ErrorCode::InvalidSurface, cls.errors.front());
    for (const auto& tv : spec.transversals) {
      if (tv.polygon < 0 || static_cast<std::size_t>(tv.polygon) >= s_.polygons.size()) {
        throw Error(ErrorCode::InvalidTransversal, "transversal polygon out of range");
      }
      const Polygon& poly = s_.polygons[tv.polygon];
      Prepared p{tv, tv.end - tv.start, 0, off, -1};
      if (p.w == Point2{}) throw Error(ErrorCode::InvalidTransversal, "zero-length transversal");
      auto len = exact_length(p.w);
      if (!len) throw Error(ErrorCode::InvalidTransversal, "transversal length is irrational: " + tv.start.str() + " -> " + tv.end.str());
      p.len = *len;
      Rational side = cross(p.w, d_);
      if (side.is_zero()) throw Error(ErrorCode::InvalidTransversal, "transversal parallel to the direction");
      if (side.sign() < 0) {
        throw Error(ErrorCode::InvalidTransversal,
                    "transversal must be oriented so the flow crosses it from right to left");
      }
      for (int e = 0; e < static_cast<int>(poly.size()); ++e) {
        if (on_closed_segment(poly.vertex(e), poly.vertex(e + 1), tv.start) &&
            on_closed_segment(poly.vertex(e), poly.vertex(e + 1), tv.end)) {
          p.edge = e;
        }
      }
      for (std::size_t v = 0; v < poly.size(); ++v) {
        const Point2& q = poly.vertex(v);
        if (q == tv.start || q == tv.end) continue;
        if (on_closed_segment(tv.start, tv.end, q)) {
          throw Error(ErrorCode::TransversalContainsSingularity, "vertex " + q.str() + " lies inside a transversal");
        }
      }
      if (p.edge < 0) {
        for (int e = 0; e < static_cast<int>(poly.size()); ++e) {
          if (open_segments_meet(tv.start, tv.end, poly.vertex(e), poly.vertex(e + 1))) {
            throw Error(ErrorCode::InvalidTransversal, "chord transversal crosses the polygon boundary");
          }
        }
      }
      for (const auto& other : tv_) {
        if (other.tv.polygon == tv.polygon && open_segments_meet(tv.start, tv.end, other.tv.start, other.tv.end)) {
          throw Error(ErrorCode::InvalidTransversal, "transversals overlap");
        }
      }
      off += p.len;
      tv_.push_back(p);
      int k = static_cast<int>(tv_.size()) - 1;
      if (p.edge >= 0) {
        on_edge_[{tv.polygon, p.edge}].push_back(k);
      } else {
        chords_[tv.polygon].push_back(k);
      }
    }
    total_end_ = off;
  }

  // Parameter on transversal k of the point seg(t), as slope * t + offset.
  std::pair<Rational, Rational> coordinate(int k, const Segment& seg) const {
    const Prepared& p = tv_[k];
    Rational ww = dot(p.w, p.w);
    return {p.len * dot(seg.dir, p.w) / ww, p.offset + p.len * dot(seg.base - p.tv.start, p.w) / ww};
  }

  void emit(int k, const Segment& seg, const Rational& a, const Rational& b) {
    auto [slope, offset] = coordinate(k, seg);
    out_.emplace_back(Interval(a, b), slope, offset);
  }

  void seed(int k) {
    const Prepared& p = tv_[k];
    Point2 dir = p.len.inverse() * p.w;
    Point2 base = p.tv.start - (p.offset / p.len) * p.w;
    Rational t1 = p.offset + p.len;
    if (p.edge < 0) {
      queue_.push_back({p.offset, t1, p.tv.polygon, base, dir, -1, k, 0});
      return;
    }
    const Polygon& poly = s_.polygons[p.tv.polygon];
    if (cross(poly.edge_vector(p.edge), d_).sign() > 0) {
      queue_.push_back({p.offset, t1, p.tv.polygon, base, dir, p.edge, -1, 0});
    } else {
      const auto& [to, map] = idx_.partner(p.tv.polygon, p.edge);
      queue_.push_back({p.offset, t1, to.polygon, map.apply(base), map.lambda * dir, to.edge, -1, 0});
    }
  }

  // Splits [a, b) where seg(t) passes an endpoint of a transversal lying on
  // edge (polygon, edge), then emits the parts on a transversal and hands
  // the rest to `rest`.
  template <class Rest>
  void split_on_edge(int polygon, int edge, const Segment& seg, const Rational& a, const Rational& b, Rest rest) {
    auto it = on_edge_.find({polygon, edge});
    if (it == on_edge_.end()) {
      rest(a, b);
      return;
    }
    std::set<Rational> cuts{a, b};
    Rational dd = dot(seg.dir, seg.dir);
    for (int k : it->second) {
      for (const Point2& x : {tv_[k].tv.start, tv_[k].tv.end}) {
        Rational t = dot(x - seg.base, seg.dir) / dd;
        if (a < t && t < b) cuts.insert(t);
      }
    }
    for (auto c = cuts.begin(); std::next(c) != cuts.end(); ++c) {
      const Rational& lo = *c;
      const Rational& hi = *std::next(c);
      Rational mid = (lo + hi) / 2;
      Point2 z = seg.base + mid * seg.dir;
      int owner = -1;
      for (int k : it->second) {
        Rational mu = dot(z - tv_[k].tv.start, tv_[k].w) / dot(tv_[k].w, tv_[k].w);
        if (mu.sign() > 0 && mu < 1) owner = k;
      }
      if (owner >= 0) {
        emit(owner, seg, lo, hi);
      } else {
        rest(lo, hi);
      }
    }
  }

  void propagate(const Beam& b) {
    const Polygon& poly = s_.polygons[b.polygon];
    Rational denom = cross(b.dir, d_);
    std::set<Rational> cuts{b.t0, b.t1};
    auto add_cut = [&](const Point2& v) {
      Rational t = cross(v - b.base, d_) / denom;
      if (b.t0 < t && t < b.t1) cuts.insert(t);
    };
    for (const auto& v : poly.vertices) add_cut(v);
    auto ch = chords_.find(b.polygon);
    if (ch != chords_.end()) {
      for (int k : ch->second) {
        add_cut(tv_[k].tv.start);
        add_cut(tv_[k].tv.end);
      }
    }

    for (auto c = cuts.begin(); std::next(c) != cuts.end(); ++c) {
      const Rational& lo = *c;
      const Rational& hi = *std::next(c);
      Point2 z = b.base + ((lo + hi) / 2) * b.dir;

      // Nearest obstacle: an edge of the polygon or a chord transversal.
      int best_edge = -1, best_chord = -1;
      Rational best_tau;
      bool have = false;
      const int n = static_cast<int>(poly.size());
      for (int e = 0; e < n; ++e) {
        if (e == b.src_edge) continue;
        Point2 a = poly.vertex(e), w = poly.edge_vector(e);
        Rational den = cross(d_, w);
        if (den.is_zero()) continue;
        Rational tau = cross(a - z, w) / den;
        Rational s = cross(a - z, d_) / den;
        if (tau.sign() <= 0 || s.sign() < 0 || s > 1) continue;
        if (!have || tau < best_tau) {
          have = true;
          best_tau = tau;
          best_edge = e;
        }
      }
      if (ch != chords_.end()) {
        for (int k : ch->second) {
          if (k == b.src_chord) continue;
          const Prepared& p = tv_[k];
          Rational den = cross(d_, p.w);
          Rational tau = cross(p.tv.start - z, p.w) / den;
          Rational s = cross(p.tv.start - z, d_) / den;
          if (tau.sign() <= 0 || s.sign() < 0 || s >= 1) continue;
          if (!have || tau <= best_tau) {
            have = true;
            best_tau = tau;
            best_chord = k;
            best_edge = -1;
          }
        }
      }
      if (!have) throw Error(ErrorCode::Internal, "beam escaped its polygon");

      Point2 q0, w;
      if (best_chord >= 0) {
        q0 = tv_[best_chord].tv.start;
        w = tv_[best_chord].w;
      } else {
        q0 = poly.vertex(best_edge);
        w = poly.edge_vector(best_edge);
      }
      Rational den = cross(d_, w);
      Segment hit{b.base + (cross(q0 - b.base, w) / den) * d_, b.dir - (cross(b.dir, w) / den) * d_};
      if (best_chord >= 0) {
        emit(best_chord, hit, lo, hi);
        continue;
      }
      split_on_edge(b.polygon, best_edge, hit, lo, hi, [&](const Rational& a0, const Rational& a1) {
        const auto& [to, map] = idx_.partner(b.polygon, best_edge);
        Segment moved{map.apply(hit.base), map.lambda * hit.dir};
        split_on_edge(to.polygon, to.edge, moved, a0, a1, [&](const Rational& c0, const Rational& c1) {
          if (b.steps + 1 >= budget_) {
            unresolved_.emplace_back(c0, c1);
          } else {
            queue_.push_back({c0, c1, to.polygon, moved.base, moved.dir, to.edge, -1, b.steps + 1});
          }
        });
      });
    }
  }

  const Surface& s_;
  SurfaceIndex idx_;
  Point2 d_;
  std::size_t budget_;
  std::vector<Prepared> tv_;
  std::map<std::pair<int, int>, std::vector<int>> on_edge_;
  std::map<int, std::vector<int>> chords_;
  Rational total_end_;
  std::deque<Beam> queue_;
  std::vector<iet::AffinePiece> out_;
  std::vector<Interval> unresolved_;
};

}  // namespace

TransversalReturn first_return_on_transversal(const Surface& s, const TransversalSpec& spec, const Direction& dir,
                                              std::size_t budget) {
  Tracer tracer(s, spec, dir, budget);
  std::vector<Interval> unresolved;
  auto map = tracer.run(unresolved);
  return {std::move(map), std::move(unresolved)};
}

}  // namespace folia::geom
