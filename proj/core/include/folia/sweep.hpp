#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "folia/rauzy.hpp"

namespace folia::rv {

// n + 1 evenly spaced slopes from `from` to `to`, both included.
struct Grid {
  Rational from;
  Rational to;
  int n = 1;
};

// Parses "a/b:c/d:n".
Grid parse_grid(const std::string& text);
std::vector<Rational> grid_slopes(const Grid& g);

struct SweepEntry {
  Rational slope;
  std::optional<ClassificationReport> report;
  std::string error;  // set instead of report when the job threw
};

struct SweepCounts {
  std::size_t morse_smale = 0;
  std::size_t saddle_connection = 0;
  std::size_t undetermined = 0;
  std::size_t non_standard = 0;
  std::size_t errors = 0;
};

struct SweepResult {
  std::vector<SweepEntry> entries;  // in input order
  SweepCounts counts;
  double seconds = 0;  // wall time; not part of the deterministic output
};

using SweepJob = std::function<ClassificationReport(const Rational& slope)>;

// Runs `job` on every slope with `workers` threads. Entries come back in
// input order whatever the worker count.
SweepResult sweep(const std::vector<Rational>& slopes, const SweepJob& job, unsigned workers);

// Classification of the Disco first-return map at each slope of the grid.
SweepResult sweep_disco(const Grid& grid, const ClassifyOptions& opts, unsigned workers);

}  // namespace folia::rv
