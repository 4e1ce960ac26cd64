#include "folia/error.hpp"
#include "folia/rauzy.hpp"

namespace folia::rv {

namespace {

TwoBranchMap induce(const TwoBranchMap& m, Case c) {
  const auto& A = m.a();
  const auto& B = m.b();
  if (c == Case::Case2a) {
    // Keep B = [p, l1). Points of B landing in A come back after one more step.
    Rational q = B.preimage(m.p());
    return TwoBranchMap(B.domain, q, A.slope * B.slope, A.slope * B.offset + A.offset, B.slope, B.offset);
  }
  // Case2b: keep A = [l0, p).
  Rational q = A.preimage(m.p());
  return TwoBranchMap(A.domain, q, A.slope, A.offset, B.slope * A.slope, B.slope * A.offset + B.offset);
}

}  // namespace

StepResult rv_step(const RvState& state, const RvOptions& opts) {
  Case c = case_of(state.map);
  if (c != Case::Case2a && c != Case::Case2b) return Terminal{c};
  std::optional<TwoBranchMap> induced;
  try {
    induced.emplace(induce(state.map, c));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateBranch) throw;
    return Terminal{Case::SaddleConnection};
  }
  TwoBranchMap& next = *induced;
  if (opts.cross_check) {
    const Interval& kept = c == Case::Case2a ? state.map.b().domain : state.map.a().domain;
    auto oracle = iet::first_return(state.map.to_partial(), IntervalSet(kept), 3);
    if (!oracle.unresolved.empty() || !(oracle.map == next.to_partial().canonical())) {
      throw Error(ErrorCode::Internal, "induction step disagrees with the first-return oracle");
    }
  }
  RvState out(std::move(next));
  out.step = state.step + 1;
  out.word = state.word + (c == Case::Case2a ? 'L' : 'R');
  out.lengths = state.lengths;
  out.lengths.push_back(out.map.L().length());
  return Advance{out.word.back(), std::move(out)};
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::MorseSmale: return "morse-smale";
    case Outcome::SaddleConnection: return "saddle-connection";
    case Outcome::Undetermined: return "undetermined";
    case Outcome::NonStandard: return "non-standard";
  }
  return "?";
}

ClassificationReport classify(const TwoBranchMap& map, const ClassifyOptions& opts) {
  if (opts.max_depth < 1) throw Error(ErrorCode::InvalidArgument, "max depth must be at least 1");
  RvState state(map);
  ClassificationReport rep{Outcome::Undetermined, 0, opts.max_depth, "", std::nullopt, map};
  while (true) {
    Case c = case_of(state.map);
    if (c == Case::Case1) {
      // On A the map B after A is a contraction of A into itself; its fixed
      // point lies on the attracting cycle of the original map.
      const auto& A = state.map.a();
      const auto& B = state.map.b();
      Rational lambda = A.slope * B.slope;
      Rational x = (B.slope * A.offset + B.offset) / (1 - lambda);
      auto cyc = iet::cycle_through(map.to_partial(), x, opts.cycle_budget);
      if (!cyc || cyc->kind != iet::CycleKind::Attracting) {
        throw Error(ErrorCode::Internal, "case-1 state without an attracting cycle of the original map");
      }
      rep.outcome = Outcome::MorseSmale;
      rep.cycle = std::move(cyc);
      break;
    }
    if (c == Case::SaddleConnection) {
      rep.outcome = Outcome::SaddleConnection;
      break;
    }
    if (c == Case::NonStandard) {
      rep.outcome = Outcome::NonStandard;
      break;
    }
    if (state.step >= opts.max_depth) {
      rep.outcome = Outcome::Undetermined;
      break;
    }
    auto res = rv_step(state, opts.rv);
    state = std::move(std::get<Advance>(res).next);
  }
  rep.step = state.step;
  rep.word = state.word;
  rep.final_map = state.map;
  return rep;
}

}  // namespace folia::rv
