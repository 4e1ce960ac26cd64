#include "folia/aiet.hpp"

#include <algorithm>

#include "folia/error.hpp"

namespace folia::iet {

AffinePiece::AffinePiece(Interval d, Rational s, Rational c)
    : domain(std::move(d)), slope(std::move(s)), offset(std::move(c)) {
  if (slope.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "slope must be positive, got " + slope.str());
}

PartialAiet::PartialAiet(Interval ambient, std::vector<AffinePiece> pieces, bool require_injective)
    : ambient_(std::move(ambient)), pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end(),
            [](const AffinePiece& a, const AffinePiece& b) { return a.domain.lo() < b.domain.lo(); });
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (!ambient_.contains(p.domain)) {
      throw Error(ErrorCode::InvalidArgument, "piece domain " + p.domain.str() + " outside ambient " + ambient_.str());
    }
    if (!ambient_.contains(p.image())) {
      throw Error(ErrorCode::InvalidArgument, "piece image " + p.image().str() + " outside ambient " + ambient_.str());
    }
    if (i > 0 && pieces_[i - 1].domain.hi() > p.domain.lo()) {
      throw Error(ErrorCode::InvalidArgument, "overlapping piece domains at " + p.domain.lo().str());
    }
  }
  std::vector<Interval> images;
  for (const auto& p : pieces_) images.push_back(p.image());
  std::sort(images.begin(), images.end(), [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  for (std::size_t i = 1; require_injective && i < images.size(); ++i) {
    if (images[i - 1].hi() > images[i].lo()) {
      throw Error(ErrorCode::InvalidArgument, "overlapping piece images at " + images[i].lo().str());
    }
  }
  undefined_ = IntervalSet(ambient_).subtract(domain());
}

IntervalSet PartialAiet::domain() const {
  std::vector<Interval> d;
  for (const auto& p : pieces_) d.push_back(p.domain);
  return IntervalSet(std::move(d));
}

IntervalSet PartialAiet::image() const {
  std::vector<Interval> d;
  for (const auto& p : pieces_) d.push_back(p.image());
  return IntervalSet(std::move(d));
}

std::optional<std::size_t> PartialAiet::piece_index(const Rational& x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Rational& v, const AffinePiece& p) { return v < p.domain.lo(); });
  if (it == pieces_.begin()) return std::nullopt;
  --it;
  if (!it->domain.contains(x)) return std::nullopt;
  return static_cast<std::size_t>(it - pieces_.begin());
}

std::optional<Rational> PartialAiet::evaluate(const Rational& x) const {
  auto i = piece_index(x);
  if (!i) return std::nullopt;
  return pieces_[*i].apply(x);
}

PartialAiet PartialAiet::canonical() const {
  std::vector<AffinePiece> out;
  for (const auto& p : pieces_) {
    if (!out.empty()) {
      auto& b = out.back();
      if (b.domain.hi() == p.domain.lo() && b.slope == p.slope && b.offset == p.offset) {
        b = AffinePiece(Interval(b.domain.lo(), p.domain.hi()), b.slope, b.offset);
        continue;
      }
    }
    out.push_back(p);
  }
  return PartialAiet(ambient_, std::move(out), false);
}

Aiet::Aiet(Interval ambient, std::vector<AffinePiece> pieces)
    : map_(std::move(ambient), std::move(pieces), false) {
  if (!map_.undefined_set().empty()) {
    throw Error(ErrorCode::InvalidArgument, "piece domains do not tile the ambient interval; missing " +
                                                map_.undefined_set().str());
  }
}

bool Aiet::is_iet() const {
  return std::all_of(pieces().begin(), pieces().end(), [](const AffinePiece& p) { return p.slope == 1; });
}

Aiet Aiet::canonical() const {
  auto c = map_.canonical();
  return Aiet(c.ambient(), c.pieces());
}

BijectivityCertificate check_bijective(const Aiet& t) {
  std::vector<Interval> images;
  for (const auto& p : t.pieces()) images.push_back(p.image());
  std::sort(images.begin(), images.end(), [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  BijectivityCertificate cert;
  Rational cursor = t.ambient().lo();
  for (const auto& iv : images) {
    if (cursor < iv.lo()) cert.defects.push_back({ImageDefect::Kind::Gap, Interval(cursor, iv.lo())});
    if (iv.lo() < cursor) {
      cert.defects.push_back({ImageDefect::Kind::Overlap, Interval(iv.lo(), min(cursor, iv.hi()))});
    }
    cursor = max(cursor, iv.hi());
  }
  if (cursor < t.ambient().hi()) cert.defects.push_back({ImageDefect::Kind::Gap, Interval(cursor, t.ambient().hi())});
  cert.bijective = cert.defects.empty();
  return cert;
}

Aiet invert(const Aiet& t) {
  if (!check_bijective(t).bijective) throw Error(ErrorCode::NotBijective, "cannot invert a non-bijective map");
  std::vector<AffinePiece> inv;
  for (const auto& p : t.pieces()) {
    Rational s = p.slope.inverse();
    inv.emplace_back(p.image(), s, -p.offset * s);
  }
  return Aiet(t.ambient(), std::move(inv));
}

PartialAiet invert_partial(const PartialAiet& m) {
  std::vector<AffinePiece> inv;
  for (const auto& p : m.pieces()) {
    Rational s = p.slope.inverse();
    inv.emplace_back(p.image(), s, -p.offset * s);
  }
  return PartialAiet(m.ambient(), std::move(inv));
}

std::optional<Aiet> as_aiet(const PartialAiet& m) {
  if (!m.undefined_set().empty()) return std::nullopt;
  if (IntervalSet(m.ambient()) != m.image()) return std::nullopt;
  return Aiet(m.ambient(), m.pieces());
}

}  // namespace folia::iet
