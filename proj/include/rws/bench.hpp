#pragma once

// Reproduces a benchmark case with its pinned budgets and choices and
// compares the outcome against the case's expected artifacts.

#include <string>
#include <vector>

#include "rws/fixtures.hpp"
#include "rws/pipeline.hpp"

namespace rws {

struct BenchCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct BenchOutcome {
  std::string name;
  std::vector<BenchCheck> checks;
  double seconds = 0;
  bool pass() const;
};

BenchOutcome run_benchmark(const BenchmarkCase& bc);

}  // namespace rws
