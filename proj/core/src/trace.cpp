#include "folia/trace.hpp"

#include "folia/error.hpp"

namespace folia::geom {

const char* to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::Closed: return "closed";
    case TraceStatus::HitSingularity: return "hit-singularity";
    case TraceStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

namespace {

struct Hit {
  Rational tau;
  int edge = -1;
  int vertex = -1;  // >= 0 when the ray meets a vertex
  Point2 point;
};

// First point where the ray z + tau * d (tau > 0) meets the boundary of poly.
// `skip` is the edge z lies on, when the ray leaves that edge transversally.
std::optional<Hit> first_hit(const Polygon& poly, const Point2& z, const Point2& d, int skip) {
  std::optional<Hit> best;
  auto offer = [&](Hit h) {
    if (!best || h.tau < best->tau) {
      best = std::move(h);
    } else if (h.tau == best->tau && h.vertex >= 0 && best->vertex < 0) {
      best = std::move(h);
    }
  };
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    if (i == skip) continue;
    Point2 a = poly.vertex(i);
    Point2 w = poly.edge_vector(i);
    Rational denom = cross(d, w);
    if (denom.is_zero()) {
      // Ray along the edge line: it can only leave through a vertex.
      if (!cross(a - z, d).is_zero()) continue;
      for (int k : {i, (i + 1) % n}) {
        Rational tau = dot(poly.vertex(k) - z, d) / dot(d, d);
        if (tau.sign() > 0) offer({tau, i, k, poly.vertex(k)});
      }
      continue;
    }
    Rational tau = cross(a - z, w) / denom;
    if (tau.sign() <= 0) continue;
    Rational s = cross(a - z, d) / denom;
    if (s.sign() < 0 || s > 1) continue;
    int vertex = s.is_zero() ? i : (s == 1 ? (i + 1) % n : -1);
    offer({tau, i, vertex, z + tau * d});
  }
  return best;
}

// Edge index holding z (excluding vertices), or -1.
int edge_containing(const Polygon& poly, const Point2& z) {
  for (int i = 0; i < static_cast<int>(poly.size()); ++i) {
    Point2 a = poly.vertex(i), w = poly.edge_vector(i);
    if (!cross(z - a, w).is_zero()) continue;
    Rational s = dot(z - a, w) / dot(w, w);
    if (s.sign() > 0 && s < 1) return i;
  }
  return -1;
}

bool strictly_inside(const Polygon& poly, const Point2& z) {
  // Crossing number with the half-open rule on y.
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly.vertex(i);
    const Point2& b = poly.vertex(i + 1);
    if ((a.y > z.y) != (b.y > z.y)) {
      Rational x = a.x + (z.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (z.x < x) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

LeafTrace trace_leaf(const Surface& s, const SurfacePoint& start, const Direction& dir, std::size_t budget) {
  SurfaceIndex idx(s);
  if (start.polygon < 0 || static_cast<std::size_t>(start.polygon) >= s.polygons.size()) {
    throw Error(ErrorCode::InvalidArgument, "start polygon out of range");
  }
  const Point2 d = dir.vec();
  const Polygon& p0 = s.polygons[start.polygon];
  for (std::size_t v = 0; v < p0.size(); ++v) {
    if (p0.vertex(v) == start.point) {
      throw Error(ErrorCode::StartsAtSingularity, "start " + start.point.str() + " is a polygon vertex");
    }
  }

  LeafTrace tr{start, dir, {}, 1, TraceStatus::BudgetExhausted, std::nullopt, start};
  SurfacePoint cur = start;
  int cur_edge = edge_containing(p0, start.point);
  if (cur_edge < 0 && !strictly_inside(p0, start.point)) {
    throw Error(ErrorCode::InvalidArgument, "start " + start.point.str() + " is outside its polygon");
  }
  if (cur_edge >= 0) {
    Rational side = cross(p0.edge_vector(cur_edge), d);
    if (side.sign() < 0) {
      // Leaving straight away: continue from the glued copy of the point.
      const auto& [to, map] = idx.partner(start.polygon, cur_edge);
      cur = SurfacePoint{to.polygon, map.apply(start.point)};
      cur_edge = to.edge;
    } else if (side.is_zero()) {
      cur_edge = -1;
    }
  }
  const SurfacePoint anchor = cur;

  while (tr.events.size() < budget) {
    const Polygon& poly = s.polygons[cur.polygon];
    auto hit = first_hit(poly, cur.point, d, cur_edge);
    if (!hit) throw Error(ErrorCode::Internal, "ray left polygon without meeting its boundary");
    if (cur.polygon == anchor.polygon && !(cur == anchor)) {
      Point2 rel = anchor.point - cur.point;
      if (cross(rel, d).is_zero()) {
        Rational t = dot(rel, d) / dot(d, d);
        if (t.sign() > 0 && t < hit->tau) {
          tr.status = TraceStatus::Closed;
          tr.end = anchor;
          return tr;
        }
      }
    }
    if (hit->vertex >= 0) {
      tr.status = TraceStatus::HitSingularity;
      tr.vertex_class = idx.vertex_class(cur.polygon, hit->vertex);
      tr.end = SurfacePoint{cur.polygon, hit->point};
      return tr;
    }
    const auto& [to, map] = idx.partner(cur.polygon, hit->edge);
    tr.events.push_back({cur.polygon, hit->edge, hit->point, map.lambda});
    tr.accumulated_factor *= map.lambda;
    cur = SurfacePoint{to.polygon, map.apply(hit->point)};
    cur_edge = to.edge;
    tr.end = cur;
    if (cur == anchor) {
      tr.status = TraceStatus::Closed;
      return tr;
    }
  }
  return tr;
}

Rational holonomy_of_closed_trace(const LeafTrace& trace) {
  if (trace.status != TraceStatus::Closed) throw Error(ErrorCode::NotClosed, "holonomy needs a closed trace");
  const auto& ev = trace.events;
  Rational rho = 1;
  for (const auto& e : ev) rho *= e.lambda;
  for (std::size_t shift = 1; shift < ev.size(); ++shift) {
    Rational r = 1;
    for (std::size_t i = 0; i < ev.size(); ++i) r *= ev[(i + shift) % ev.size()].lambda;
    if (r != rho) throw Error(ErrorCode::Internal, "holonomy depends on the base point");
  }
  if (rho != trace.accumulated_factor) throw Error(ErrorCode::Internal, "accumulated factor mismatch");
  return rho;
}

CylinderKind classify_closed_leaf(const LeafTrace& trace) {
  Rational rho = holonomy_of_closed_trace(trace);
  if (rho == 1) return FlatCylinder{};
  return AffineCylinder{rho};
}

std::optional<Rational> exact_length(const Point2& v) {
  Rational sq = dot(v, v);
  BigInt n = sq.num(), d = sq.den();
  BigInt rn = sqrt(n), rd = sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rational(rn, rd);
}

}  // namespace folia::geom
