#include "folia/error.hpp"
#include "folia/rauzy.hpp"

namespace folia::rv {

namespace {
Interval checked_part(const Rational& lo, const Rational& hi, const char* which) {
  if (!(lo < hi)) throw Error(ErrorCode::DegenerateBranch, std::string("branch ") + which + " has zero length");
  return Interval(lo, hi);
}
}  // namespace

TwoBranchMap::TwoBranchMap(Interval L, Rational p, Rational sa, Rational ca, Rational sb, Rational cb)
    : L_(std::move(L)),
      p_(std::move(p)),
      a_(checked_part(L_.lo(), p_, "A"), std::move(sa), std::move(ca)),
      b_(checked_part(p_, L_.hi(), "B"), std::move(sb), std::move(cb)) {
  Interval fa = a_.image(), fb = b_.image();
  if (!L_.contains(fa) || !L_.contains(fb)) throw Error(ErrorCode::InvalidArgument, "branch image leaves L");
  if (fa.overlaps(fb)) throw Error(ErrorCode::InvalidArgument, "branch images overlap");
}

TwoBranchMap TwoBranchMap::from_partial(const iet::PartialAiet& m) {
  if (m.pieces().size() != 2 || !m.undefined_set().empty()) {
    throw Error(ErrorCode::InvalidArgument, "a two-branch map needs exactly two pieces tiling the ambient interval, got " +
                                                std::to_string(m.pieces().size()) + " pieces");
  }
  const auto& a = m.pieces()[0];
  const auto& b = m.pieces()[1];
  return TwoBranchMap(m.ambient(), b.domain.lo(), a.slope, a.offset, b.slope, b.offset);
}

IntervalSet TwoBranchMap::hole() const {
  return IntervalSet(L_).subtract(IntervalSet(std::vector<Interval>{a_.image(), b_.image()}));
}

iet::PartialAiet TwoBranchMap::to_partial() const { return iet::PartialAiet(L_, {a_, b_}); }

TwoBranchMap TwoBranchMap::mirrored() const {
  // r(x) = lo + hi - x; the conjugate r f r sends r(B) by B's formula and r(A) by A's.
  Rational sum = L_.lo() + L_.hi();
  Rational new_p = sum - p_;
  Rational ca = (1 - b_.slope) * sum - b_.offset;
  Rational cb = (1 - a_.slope) * sum - a_.offset;
  return TwoBranchMap(L_, new_p, b_.slope, ca, a_.slope, cb);
}

const char* to_string(Case c) {
  switch (c) {
    case Case::Case1: return "case-1";
    case Case::Case2a: return "case-2a";
    case Case::Case2b: return "case-2b";
    case Case::SaddleConnection: return "saddle-connection";
    case Case::NonStandard: return "non-standard";
  }
  return "?";
}

Case case_of(const TwoBranchMap& m) {
  Interval fa = m.a().image(), fb = m.b().image();
  const Rational& p = m.p();
  if (fa.lo() == p || fa.hi() == p || fb.lo() == p || fb.hi() == p) return Case::SaddleConnection;
  bool a_in_b = m.b().domain.contains(fa);
  bool b_in_a = m.a().domain.contains(fb);
  if (a_in_b && b_in_a) return Case::Case1;
  if (a_in_b && fb.contains_open(p)) return Case::Case2a;
  if (b_in_a && fa.contains_open(p)) return Case::Case2b;
  return Case::NonStandard;
}

}  // namespace folia::rv
