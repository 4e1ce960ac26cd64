#include "folia/surface.hpp"

#include <map>
#include <numeric>

#include "folia/error.hpp"

namespace folia::geom {

namespace {

// 0 for directions in the upper half plane [0, pi), 1 for [pi, 2 pi).
int half(const Point2& v) { return (v.y.sign() > 0 || (v.y.sign() == 0 && v.x.sign() > 0)) ? 0 : 1; }

// Strict angular order measured counterclockwise from the positive x axis.
bool angle_less(const Point2& a, const Point2& b) {
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b).sign() > 0;
}

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  auto orient = [](const Point2& p, const Point2& q, const Point2& r) { return cross(q - p, r - p).sign(); };
  auto on_seg = [](const Point2& p, const Point2& q, const Point2& r) {
    return min(p.x, q.x) <= r.x && r.x <= max(p.x, q.x) && min(p.y, q.y) <= r.y && r.y <= max(p.y, q.y);
  };
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) return true;
  if (o1 == 0 && on_seg(a, b, c)) return true;
  if (o2 == 0 && on_seg(a, b, d)) return true;
  if (o3 == 0 && on_seg(c, d, a)) return true;
  if (o4 == 0 && on_seg(c, d, b)) return true;
  return false;
}

std::string edge_name(const EdgeRef& r) {
  return "edge " + std::to_string(r.edge) + " of polygon " + std::to_string(r.polygon);
}

void check_polygon(const Polygon& poly, std::vector<std::string>& errors) {
  const std::size_t n = poly.size();
  std::string name = "polygon " + std::to_string(poly.id);
  if (n < 3) {
    errors.push_back(name + " has fewer than 3 vertices");
    return;
  }
  Rational area2;
  for (std::size_t i = 0; i < n; ++i) area2 += cross(poly.vertex(i), poly.vertex(i + 1));
  if (area2.sign() <= 0) errors.push_back(name + " is not counterclockwise");
  for (std::size_t i = 0; i < n; ++i) {
    if (poly.edge_vector(i) == Point2{}) errors.push_back(name + " has a zero-length edge " + std::to_string(i));
    // Adjacent edges may only share their common vertex.
    Point2 a = poly.edge_vector(i), b = poly.edge_vector(i + 1);
    if (cross(a, b).sign() == 0 && dot(a, b).sign() < 0) {
      errors.push_back(name + " folds back on itself at vertex " + std::to_string((i + 1) % n));
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(poly.vertex(i), poly.vertex(i + 1), poly.vertex(j), poly.vertex(j + 1))) {
        errors.push_back(name + " is not simple: edges " + std::to_string(i) + " and " + std::to_string(j) + " meet");
      }
    }
  }
}

void check_pairing(const Surface& s, const EdgePairing& pr, std::vector<std::string>& errors) {
  const auto& pa = s.polygons[pr.a.polygon];
  const auto& pb = s.polygons[pr.b.polygon];
  Point2 a0 = pa.vertex(pr.a.edge), a1 = pa.vertex(pr.a.edge + 1);
  Point2 b0 = pb.vertex(pr.b.edge), b1 = pb.vertex(pr.b.edge + 1);
  Point2 ea = a1 - a0, eb = b1 - b0;
  std::string name = "pairing " + edge_name(pr.a) + " <-> " + edge_name(pr.b);
  if (pr.map.lambda.sign() <= 0) {
    errors.push_back(name + ": lambda must be positive");
    return;
  }
  if (cross(ea, eb).sign() != 0 || dot(ea, eb).sign() >= 0) {
    errors.push_back(name + ": edges are not parallel with opposite orientation");
    return;
  }
  if (eb.x != -pr.map.lambda * ea.x || eb.y != -pr.map.lambda * ea.y) {
    errors.push_back(name + ": lambda " + pr.map.lambda.str() + " is not the length ratio");
  }
  if (pr.map.apply(a0) != b1 || pr.map.apply(a1) != b0) {
    errors.push_back(name + ": map does not send the edge onto its partner with reversed orientation");
  }
}

}  // namespace

std::vector<std::vector<int>> corner_classes(const Surface& s) {
  // Partner lookup, tolerant of broken tables (validate reports those).
  std::map<EdgeRef, EdgeRef> partner;
  for (const auto& pr : s.pairings) {
    partner[pr.a] = pr.b;
    partner[pr.b] = pr.a;
  }
  std::vector<std::vector<int>> cls(s.polygons.size());
  for (std::size_t p = 0; p < s.polygons.size(); ++p) cls[p].assign(s.polygons[p].size(), -1);
  int next_id = 0;
  for (std::size_t p = 0; p < s.polygons.size(); ++p) {
    for (std::size_t v = 0; v < s.polygons[p].size(); ++v) {
      if (cls[p][v] >= 0) continue;
      Corner c{static_cast<int>(p), static_cast<int>(v)};
      while (cls[c.polygon][c.vertex] < 0) {
        cls[c.polygon][c.vertex] = next_id;
        int n = static_cast<int>(s.polygons[c.polygon].size());
        // The edge arriving at this corner is glued to an edge that starts at the next corner.
        auto it = partner.find(EdgeRef{c.polygon, (c.vertex + n - 1) % n});
        if (it == partner.end()) break;
        c = Corner{it->second.polygon, it->second.edge};
      }
      ++next_id;
    }
  }
  return cls;
}

ValidationReport validate(const Surface& s) {
  ValidationReport rep;
  auto& errors = rep.errors;
  if (s.polygons.empty()) errors.push_back("surface has no polygons");
  for (std::size_t i = 0; i < s.polygons.size(); ++i) {
    if (s.polygons[i].id != static_cast<int>(i)) errors.push_back("polygon ids must be 0..n-1 in order");
    check_polygon(s.polygons[i], errors);
  }
  if (!errors.empty()) return rep;

  std::map<EdgeRef, int> uses;
  bool table_ok = true;
  for (const auto& pr : s.pairings) {
    for (const auto& r : {pr.a, pr.b}) {
      if (r.polygon < 0 || static_cast<std::size_t>(r.polygon) >= s.polygons.size() || r.edge < 0 ||
          static_cast<std::size_t>(r.edge) >= s.polygons[r.polygon].size()) {
        errors.push_back("pairing references missing " + edge_name(r));
        table_ok = false;
      } else {
        ++uses[r];
      }
    }
    if (pr.a == pr.b) {
      errors.push_back("edge paired with itself: " + edge_name(pr.a));
      table_ok = false;
    }
  }
  for (std::size_t p = 0; p < s.polygons.size(); ++p) {
    for (std::size_t e = 0; e < s.polygons[p].size(); ++e) {
      EdgeRef r{static_cast<int>(p), static_cast<int>(e)};
      int u = uses.count(r) ? uses[r] : 0;
      if (u == 0) errors.push_back("unpaired edge: " + edge_name(r));
      if (u > 1) errors.push_back("edge paired more than once: " + edge_name(r));
      if (u != 1) table_ok = false;
    }
  }
  if (!table_ok) return rep;
  for (const auto& pr : s.pairings) check_pairing(s, pr, errors);
  if (!errors.empty()) return rep;

  // Connectivity through the pairings.
  std::vector<int> comp(s.polygons.size());
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (const auto& pr : s.pairings) comp[find(pr.a.polygon)] = find(pr.b.polygon);
  for (std::size_t p = 0; p < s.polygons.size(); ++p) {
    if (find(static_cast<int>(p)) != find(0)) {
      errors.push_back("surface is not connected");
      return rep;
    }
  }

  // Cone angles: walk each class, turning counterclockwise from the outgoing
  // edge to the reversed incoming edge at every corner. The number of times
  // that turning passes the positive x axis is l.
  auto cls = corner_classes(s);
  std::map<EdgeRef, EdgeRef> partner;
  for (const auto& pr : s.pairings) {
    partner[pr.a] = pr.b;
    partner[pr.b] = pr.a;
  }
  int n_classes = 0;
  for (const auto& row : cls) {
    for (int c : row) n_classes = std::max(n_classes, c + 1);
  }
  rep.vertex_classes.resize(n_classes);
  std::vector<bool> done(n_classes, false);
  for (std::size_t p = 0; p < s.polygons.size(); ++p) {
    for (std::size_t v = 0; v < s.polygons[p].size(); ++v) {
      int id = cls[p][v];
      if (done[id]) continue;
      done[id] = true;
      VertexClass vc;
      int crossings = 0;
      Corner c{static_cast<int>(p), static_cast<int>(v)};
      do {
        vc.corners.push_back(c);
        const auto& poly = s.polygons[c.polygon];
        int n = static_cast<int>(poly.size());
        Point2 out = poly.edge_vector(c.vertex);
        Point2 back = poly.vertex(c.vertex + n - 1) - poly.vertex(c.vertex);
        // Sweep from `out` to `back` counterclockwise; count passes over angle 0.
        bool back_before_out = !angle_less(out, back);
        if (back_before_out) ++crossings;
        EdgeRef in_edge{c.polygon, (c.vertex + n - 1) % n};
        EdgeRef nxt = partner[in_edge];
        c = Corner{nxt.polygon, nxt.edge};
      } while (!(c == Corner{static_cast<int>(p), static_cast<int>(v)}));
      vc.l = crossings;
      rep.vertex_classes[id] = std::move(vc);
    }
  }

  int V = n_classes;
  int E = static_cast<int>(s.pairings.size());
  int F = static_cast<int>(s.polygons.size());
  rep.euler_characteristic = V - E + F;
  if ((2 - rep.euler_characteristic) % 2 != 0) {
    errors.push_back("odd Euler characteristic " + std::to_string(rep.euler_characteristic));
    return rep;
  }
  rep.genus = (2 - rep.euler_characteristic) / 2;
  int excess = 0;
  for (const auto& vc : rep.vertex_classes) {
    if (vc.l < 1) errors.push_back("vertex class with non-positive cone angle");
    excess += vc.l - 1;
  }
  if (excess != 2 * rep.genus - 2) {
    errors.push_back("cone angles sum to excess " + std::to_string(excess) + ", inconsistent with genus " +
                     std::to_string(rep.genus));
  }
  rep.ok = errors.empty();
  return rep;
}

}  // namespace folia::geom
