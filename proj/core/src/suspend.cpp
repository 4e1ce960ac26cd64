#include <algorithm>

#include "folia/error.hpp"
#include "folia/surface.hpp"

namespace folia::geom {

Surface suspend(const iet::Aiet& t) {
  if (!iet::check_bijective(t).bijective) throw Error(ErrorCode::NotBijective, "suspension needs a bijective map");
  const auto& pieces = t.pieces();
  const std::size_t n = pieces.size();
  const Rational& a = t.ambient().lo();
  const Rational& b = t.ambient().hi();

  // Bottom side ordered by image position.
  std::vector<std::size_t> by_image(n);
  for (std::size_t i = 0; i < n; ++i) by_image[i] = i;
  std::sort(by_image.begin(), by_image.end(), [&](std::size_t i, std::size_t j) {
    return pieces[i].image().lo() < pieces[j].image().lo();
  });

  Polygon rect;
  rect.id = 0;
  std::vector<int> bottom_edge(n), top_edge(n);
  for (std::size_t k = 0; k < n; ++k) {
    bottom_edge[by_image[k]] = static_cast<int>(rect.vertices.size());
    rect.vertices.push_back({pieces[by_image[k]].image().lo(), 0});
  }
  const int right = static_cast<int>(rect.vertices.size());
  rect.vertices.push_back({b, 0});
  for (std::size_t k = n; k-- > 0;) {
    top_edge[k] = static_cast<int>(rect.vertices.size());
    rect.vertices.push_back({pieces[k].domain.hi(), 1});
  }
  const int left = static_cast<int>(rect.vertices.size());
  rect.vertices.push_back({a, 1});

  Surface s;
  s.polygons.push_back(std::move(rect));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = pieces[i];
    // Top piece i, traversed right to left, lands on its image on the bottom.
    s.pairings.push_back({EdgeRef{0, top_edge[i]}, EdgeRef{0, bottom_edge[i]},
                          DilationMap{p.slope, Point2{p.offset, -p.slope}}});
  }
  s.pairings.push_back({EdgeRef{0, right}, EdgeRef{0, left}, DilationMap{1, Point2{a - b, 0}}});
  s.note = "suspension of an affine interval exchange";
  return s;
}

}  // namespace folia::geom
