#include "folia/svg.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "folia/error.hpp"

namespace folia::geom {

namespace {

constexpr int kDigits = 12;
constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

struct Frame {
  Rational min_x, max_y;
  std::string x(const Rational& v) const { return (v - min_x).decimal(kDigits); }
  std::string y(const Rational& v) const { return (max_y - v).decimal(kDigits); }
  std::string pt(const Point2& p) const { return x(p.x) + "," + y(p.y); }
};

}  // namespace

std::string render_svg(const Surface& s, const std::vector<LeafTrace>& traces) {
  if (s.polygons.empty()) throw Error(ErrorCode::InvalidSurface, "no polygons to draw");
  Rational min_x = s.polygons[0].vertices.at(0).x, max_x = min_x;
  Rational min_y = s.polygons[0].vertices.at(0).y, max_y = min_y;
  for (const auto& p : s.polygons) {
    for (const auto& v : p.vertices) {
      min_x = min(min_x, v.x);
      max_x = max(max_x, v.x);
      min_y = min(min_y, v.y);
      max_y = max(max_y, v.y);
    }
  }
  const Rational span = max(max_x - min_x, max_y - min_y);
  const Rational margin = span / 20;
  const Rational stroke = span / 400;
  Frame f{min_x - margin, max_y + margin};

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << (max_x - min_x + 2 * margin).decimal(kDigits)
    << " " << (max_y - min_y + 2 * margin).decimal(kDigits) << "\">\n";
  o << "<g id=\"polygons\" fill=\"#f4f4f4\" stroke=\"#444444\" stroke-width=\"" << stroke.decimal(kDigits) << "\">\n";
  for (const auto& p : s.polygons) {
    o << "<polygon data-id=\"" << p.id << "\" points=\"";
    for (std::size_t i = 0; i < p.size(); ++i) o << (i ? " " : "") << f.pt(p.vertices[i]);
    o << "\"/>\n";
  }
  o << "</g>\n<g id=\"pairings\" stroke-width=\"" << (3 * stroke).decimal(kDigits) << "\">\n";
  for (std::size_t k = 0; k < s.pairings.size(); ++k) {
    const auto& e = s.pairings[k];
    for (const EdgeRef& r : {e.a, e.b}) {
      const Polygon& p = s.polygons.at(static_cast<std::size_t>(r.polygon));
      const Point2& a = p.vertex(static_cast<std::size_t>(r.edge));
      const Point2& b = p.vertex(static_cast<std::size_t>(r.edge) + 1);
      o << "<line data-pairing=\"" << k << "\" stroke=\"" << kPalette[k % kPalette.size()] << "\" x1=\""
        << f.x(a.x) << "\" y1=\"" << f.y(a.y) << "\" x2=\"" << f.x(b.x) << "\" y2=\"" << f.y(b.y) << "\"/>\n";
    }
  }
  o << "</g>\n";

  const auto classes = validate(s).vertex_classes;
  o << "<g id=\"singularities\" fill=\"#000000\">\n";
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].l <= 1) continue;
    for (const auto& k : classes[c].corners) {
      const Point2& v = s.polygons.at(static_cast<std::size_t>(k.polygon)).vertex(static_cast<std::size_t>(k.vertex));
      o << "<circle data-class=\"" << c << "\" cx=\"" << f.x(v.x) << "\" cy=\"" << f.y(v.y) << "\" r=\""
        << (4 * stroke).decimal(kDigits) << "\"/>\n";
    }
  }
  o << "</g>\n";

  if (!traces.empty()) {
    SurfaceIndex index(s);
    o << "<g id=\"traces\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" << stroke.decimal(kDigits) << "\">\n";
    for (std::size_t t = 0; t < traces.size(); ++t) {
      const auto& tr = traces[t];
      o << "<g class=\"trace\" data-trace=\"" << t << "\" data-status=\"" << to_string(tr.status) << "\">\n";
      auto segment = [&](int poly, const Point2& a, const Point2& b) {
        if (a == b) return;
        o << "<polyline data-polygon=\"" << poly << "\" points=\"" << f.pt(a) << " " << f.pt(b) << "\"/>\n";
      };
      int poly = tr.start.polygon;
      Point2 from = tr.start.point;
      for (const auto& e : tr.events) {
        segment(poly, from, e.point);
        const auto& [to, map] = index.partner(e.polygon, e.edge);
        poly = to.polygon;
        from = map.apply(e.point);
      }
      segment(poly, from, tr.end.point);
      o << "</g>\n";
    }
    o << "</g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void render_svg_file(const Surface& s, const std::vector<LeafTrace>& traces, const std::string& path) {
  const std::string text = render_svg(s, traces);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace folia::geom
