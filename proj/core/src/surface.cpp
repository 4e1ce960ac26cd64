#include "folia/surface.hpp"

#include "folia/error.hpp"

namespace folia::geom {

Direction::Direction(BigInt x, BigInt y) : dx(std::move(x)), dy(std::move(y)) {
  if (dx == 0 && dy == 0) throw Error(ErrorCode::InvalidArgument, "direction (0, 0)");
  BigInt g = gcd(dx, dy);
  dx /= g;
  dy /= g;
}

Direction Direction::parse(const std::string& text) {
  auto slash = text.find('/');
  BigInt x, y;
  auto is_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  if (slash == std::string::npos || !is_int(text.substr(0, slash)) || !is_int(text.substr(slash + 1))) {
    throw Error(ErrorCode::Parse, "direction must be \"dx/dy\" with integers, got \"" + text + "\"");
  }
  x.set_str(text.substr(0, slash), 10);
  y.set_str(text.substr(slash + 1), 10);
  if (x == 0 && y == 0) throw Error(ErrorCode::Parse, "direction 0/0");
  return Direction(x, y);
}

SurfaceIndex::SurfaceIndex(const Surface& s) : s_(s) {
  partner_.resize(s.polygons.size());
  for (std::size_t p = 0; p < s.polygons.size(); ++p) {
    partner_[p].resize(s.polygons[p].size(), {EdgeRef{-1, -1}, DilationMap{}});
  }
  auto in_range = [&](const EdgeRef& r) {
    return r.polygon >= 0 && static_cast<std::size_t>(r.polygon) < s.polygons.size() && r.edge >= 0 &&
           static_cast<std::size_t>(r.edge) < s.polygons[r.polygon].size();
  };
  for (const auto& pr : s.pairings) {
    if (!in_range(pr.a) || !in_range(pr.b)) throw Error(ErrorCode::InvalidSurface, "pairing references a missing edge");
    partner_[pr.a.polygon][pr.a.edge] = {pr.b, pr.map};
    partner_[pr.b.polygon][pr.b.edge] = {pr.a, pr.map.inverse()};
  }
  for (std::size_t p = 0; p < partner_.size(); ++p) {
    for (std::size_t e = 0; e < partner_[p].size(); ++e) {
      if (partner_[p][e].first.polygon < 0) {
        throw Error(ErrorCode::InvalidSurface,
                    "unpaired edge " + std::to_string(e) + " of polygon " + std::to_string(p));
      }
    }
  }
  classes_ = corner_classes(s_);
}

}  // namespace folia::geom
