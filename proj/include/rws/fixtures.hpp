#pragma once

// The five benchmark instances shipped in data/, compiled into the library.
// Each document holds the instance, pinned budgets, the choices made at
// steps 1 and 2, and the expected artifacts.

#include <string>
#include <string_view>
#include <vector>

#include "rws/documents.hpp"

namespace rws {

struct EmbeddedFixture {
  std::string_view name;
  std::string_view text;
};

const std::vector<EmbeddedFixture>& embedded_fixtures();

struct BenchmarkCase {
  std::string name;
  std::string title;
  Json document;

  ProblemInstance instance() const { return instance_from_json(document.at("instance")); }
  const Json& expected() const { return document.at("expected"); }
  const Json& budgets() const { return document.at("budgets"); }
  std::string choice(const char* step) const { return document.at("choices").at(step).get<std::string>(); }
  /// The expected table as a schedule; fixture tables use one character
  /// per shift name.
  Schedule table(const ProblemInstance& inst) const;
};

std::vector<std::string> benchmark_names();
/// Throws Error for an unknown name.
BenchmarkCase benchmark_case(std::string_view name);

}  // namespace rws
