#include "folia/interval.hpp"

#include <algorithm>

#include "folia/error.hpp"

namespace folia {

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!(lo_ < hi_)) {
    throw Error(ErrorCode::InvalidArgument, "empty interval [" + lo_.str() + ", " + hi_.str() + ")");
  }
}

std::optional<Interval> Interval::intersect(const Interval& o) const {
  const Rational& a = max(lo_, o.lo_);
  const Rational& b = min(hi_, o.hi_);
  if (a < b) return Interval(a, b);
  return std::nullopt;
}

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }

void IntervalSet::normalize() {
  std::sort(parts_.begin(), parts_.end(),
            [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  std::vector<Interval> merged;
  for (const auto& iv : parts_) {
    if (!merged.empty() && iv.lo() <= merged.back().hi()) {
      if (merged.back().hi() < iv.hi()) merged.back() = Interval(merged.back().lo(), iv.hi());
    } else {
      merged.push_back(iv);
    }
  }
  parts_ = std::move(merged);
}

Rational IntervalSet::measure() const {
  Rational m;
  for (const auto& iv : parts_) m += iv.length();
  return m;
}

bool IntervalSet::contains(const Rational& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rational& v, const Interval& iv) { return v < iv.lo(); });
  return it != parts_.begin() && std::prev(it)->contains(x);
}

bool IntervalSet::contains(const Interval& iv) const {
  for (const auto& p : parts_) {
    if (p.contains(iv)) return true;
  }
  return false;
}

std::optional<Interval> IntervalSet::hull() const {
  if (parts_.empty()) return std::nullopt;
  return Interval(parts_.front().lo(), parts_.back().hi());
}

IntervalSet& IntervalSet::add(const Interval& iv) {
  parts_.push_back(iv);
  normalize();
  return *this;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), o.parts_.begin(), o.parts_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < o.parts_.size()) {
    if (auto x = parts_[i].intersect(o.parts_[j])) out.push_back(*x);
    if (parts_[i].hi() < o.parts_[j].hi()) ++i; else ++j;
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::subtract(const IntervalSet& o) const {
  std::vector<Interval> out;
  for (const auto& p : parts_) {
    Rational cursor = p.lo();
    for (const auto& q : o.parts_) {
      if (q.hi() <= cursor) continue;
      if (q.lo() >= p.hi()) break;
      if (cursor < q.lo()) out.emplace_back(cursor, q.lo());
      cursor = max(cursor, q.hi());
      if (cursor >= p.hi()) break;
    }
    if (cursor < p.hi()) out.emplace_back(cursor, p.hi());
  }
  return IntervalSet(std::move(out));
}

std::string IntervalSet::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ", ";
    s += parts_[i].str();
  }
  return s + "}";
}

}  // namespace folia
