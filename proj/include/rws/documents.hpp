#pragma once

// JSON and text forms of instances, schedules and stage results. These are
// shared by the CLI and the session service.

#include <cstdint>
#include <json.hpp>
#include <string>
#include <string_view>

#include "rws/assignment.hpp"
#include "rws/layouts.hpp"
#include "rws/model.hpp"
#include "rws/terms.hpp"
#include "rws/validator.hpp"

namespace rws {

using Json = nlohmann::ordered_json;

/// Parses an instance document. Every problem is collected into one
/// InstanceError with the offending field path.
ProblemInstance instance_from_json(const Json& doc);
/// Forbidden sequences are reconstructed from C: pairs where the pair is
/// forbidden in both triple positions, then any remaining triples.
Json instance_to_json(const ProblemInstance& inst);

/// {"rows": [["D", "D", "-", ...], ...]}
Json schedule_to_json(const Schedule& s, const ShiftAlphabet& shifts);
/// Throws DimensionError if the shape disagrees with the instance and Error
/// on unknown shift names.
Schedule schedule_from_json(const Json& doc, const ProblemInstance& inst);

/// Tab-separated grid with a "Employee/day" header, weekday names as column
/// labels and empty cells for days off.
std::string render_grid(const Schedule& s, const ShiftAlphabet& shifts);
Schedule parse_grid(std::string_view text, const ProblemInstance& inst);
/// Accepts either a JSON schedule document or a text grid.
Schedule parse_schedule(std::string_view text, const ProblemInstance& inst);

Json to_json(const WeekendScore& score);
Json to_json(const ValidationReport& report, const CycleShape& shape);
Json to_json(const ClassSolution& cs);
Json to_json(const ScoredLayout& layout);
Json to_json(const TermCatalog& catalog, const ShiftAlphabet& shifts);

/// Content hash used as a stable choice id ("c-" / "l-" prefixed hex).
std::string choice_id(const ClassSolution& cs);
std::string choice_id(const Layout& layout);
std::uint64_t fnv1a(std::string_view bytes);

}  // namespace rws
