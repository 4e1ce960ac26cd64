#include "folia/error.hpp"
#include "folia/fixtures.hpp"
#include "folia/rauzy.hpp"

namespace folia::rv {

geom::Direction direction_from_slope(const Rational& slope) { return geom::Direction(slope.num(), slope.den()); }

TwoBranchMap disco_first_return(const geom::Direction& d) {
  if (!geom::in_disco_sector(d)) {
    throw Error(ErrorCode::DirectionOutsideSector,
                "direction " + d.str() + " is not in the trapping sector -1/20 < dx/dy < 19/20, dy > 0");
  }
  static const geom::Surface disco = geom::disco_surface();
  auto ret = geom::first_return_on_transversal(disco, geom::disco_bottom_transversal(), d, 4);
  if (!ret.unresolved.empty()) throw Error(ErrorCode::Internal, "Disco return not resolved in four crossings");
  return TwoBranchMap::from_partial(ret.map);
}

iet::PartialAiet disco_d2_first_return(const geom::Direction& d, std::size_t budget) {
  if (!geom::in_disco_sector(d)) {
    throw Error(ErrorCode::DirectionOutsideSector,
                "direction " + d.str() + " is not in the trapping sector -1/20 < dx/dy < 19/20, dy > 0");
  }
  static const geom::Surface disco = geom::disco_surface();
  return geom::first_return_on_transversal(disco, geom::disco_d2_transversal(), d, budget).map;
}

namespace {

bool starts_with(const std::string& word, const std::string& prefix) {
  return word.size() >= prefix.size() && word.compare(0, prefix.size(), prefix) == 0;
}

}  // namespace

SlopeInterval word_to_parameter_interval(const std::string& prefix, int max_bisection, const Rational& lo,
                                         const Rational& hi,
                                         const std::function<std::string(const Rational&, int)>& word_at) {
  if (prefix.empty()) throw Error(ErrorCode::InvalidArgument, "prefix must be non-empty");
  if (max_bisection < 1) throw Error(ErrorCode::InvalidArgument, "max_bisection must be at least 1");
  Rational out_lo = lo, out_hi = hi;
  Rational in_lo, in_hi;
  for (std::size_t k = 1; k <= prefix.size(); ++k) {
    const std::string target = prefix.substr(0, k);
    const int depth = static_cast<int>(k);
    auto matches = [&](const Rational& s) { return starts_with(word_at(s, depth), target); };

    // Dyadic samples of (out_lo, out_hi), coarse to fine.
    std::optional<Rational> found;
    const int levels = std::min(max_bisection, 10);
    for (int j = 1; j <= levels && !found; ++j) {
      long denom = 1L << j;
      for (long i = 1; i < denom && !found; i += 2) {
        Rational s = out_lo + (out_hi - out_lo) * Rational(i, denom);
        if (matches(s)) found = s;
      }
    }
    if (!found) throw Error(ErrorCode::NotFound, "no sampled slope realizes prefix " + target);

    // Push the certified ends outward by bisection.
    Rational a_in = *found, a_out = out_lo;
    Rational b_in = *found, b_out = out_hi;
    for (int it = 0; it < max_bisection; ++it) {
      Rational m = (a_in + a_out) / 2;
      if (matches(m)) a_in = m; else a_out = m;
      m = (b_in + b_out) / 2;
      if (matches(m)) b_in = m; else b_out = m;
    }
    out_lo = a_out;
    out_hi = b_out;
    in_lo = a_in;
    in_hi = b_in;
  }
  const int full = static_cast<int>(prefix.size());
  if (!starts_with(word_at((in_lo + in_hi) / 2, full), prefix)) {
    throw Error(ErrorCode::NotFound, "prefix " + prefix + " does not cover a certified interval");
  }
  return {in_lo, in_hi};
}

SlopeInterval word_to_direction_interval(const std::string& prefix, int max_bisection) {
  auto word_at = [](const Rational& slope, int depth) {
    ClassifyOptions opts;
    opts.max_depth = depth;
    opts.rv.cross_check = false;
    return classify(disco_first_return(direction_from_slope(slope)), opts).word;
  };
  return word_to_parameter_interval(prefix, max_bisection, geom::disco_sector_lo(), geom::disco_sector_hi(), word_at);
}

}  // namespace folia::rv
