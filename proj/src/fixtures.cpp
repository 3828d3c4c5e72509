#include "rws/fixtures.hpp"

namespace rws {

std::vector<std::string> benchmark_names() {
  std::vector<std::string> out;
  for (const auto& f : embedded_fixtures()) out.emplace_back(f.name);
  return out;
}

BenchmarkCase benchmark_case(std::string_view name) {
  for (const auto& f : embedded_fixtures()) {
    if (f.name != name) continue;
    Json doc = Json::parse(f.text);
    return {std::string(f.name), doc.value("title", ""), std::move(doc)};
  }
  throw Error("unknown benchmark case '" + std::string(name) + "'");
}

Schedule BenchmarkCase::table(const ProblemInstance& inst) const {
  Json rows = Json::array();
  for (const auto& line : expected().at("table")) {
    Json row = Json::array();
    for (char c : line.get<std::string>()) row.push_back(std::string(1, c));
    rows.push_back(row);
  }
  return schedule_from_json(Json{{"rows", rows}}, inst);
}

}  // namespace rws
