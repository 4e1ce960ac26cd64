#include "folia/sweep.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "folia/error.hpp"

namespace folia::rv {

Grid parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
    throw Error(ErrorCode::Parse, "grid must look like a/b:c/d:n, got \"" + text + "\"");
  }
  Grid g{Rational::parse(text.substr(0, c1)), Rational::parse(text.substr(c1 + 1, c2 - c1 - 1)), 0};
  const std::string n = text.substr(c2 + 1);
  if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos || n.size() > 9) {
    throw Error(ErrorCode::Parse, "grid count must be a positive integer, got \"" + n + "\"");
  }
  g.n = std::stoi(n);
  if (g.n < 1) throw Error(ErrorCode::Parse, "grid count must be at least 1");
  if (!(g.from < g.to)) throw Error(ErrorCode::Parse, "grid must run from a smaller to a larger slope");
  return g;
}

std::vector<Rational> grid_slopes(const Grid& g) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(g.n) + 1);
  const Rational step = (g.to - g.from) / g.n;
  for (int k = 0; k <= g.n; ++k) out.push_back(g.from + step * k);
  return out;
}

SweepResult sweep(const std::vector<Rational>& slopes, const SweepJob& job, unsigned workers) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult res;
  res.entries.resize(slopes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < slopes.size(); i = next++) {
      SweepEntry& e = res.entries[i];
      e.slope = slopes[i];
      try {
        e.report = job(slopes[i]);
      } catch (const std::exception& ex) {
        e.error = ex.what();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(slopes.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& e : res.entries) {
    if (!e.report) {
      ++res.counts.errors;
      continue;
    }
    switch (e.report->outcome) {
      case Outcome::MorseSmale: ++res.counts.morse_smale; break;
      case Outcome::SaddleConnection: ++res.counts.saddle_connection; break;
      case Outcome::Undetermined: ++res.counts.undetermined; break;
      case Outcome::NonStandard: ++res.counts.non_standard; break;
    }
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

SweepResult sweep_disco(const Grid& grid, const ClassifyOptions& opts, unsigned workers) {
  return sweep(
      grid_slopes(grid),
      [&](const Rational& slope) { return classify(disco_first_return(direction_from_slope(slope)), opts); },
      workers);
}

}  // namespace folia::rv
