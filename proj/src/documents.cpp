#include "rws/documents.hpp"

#include <array>
#include <cstdio>
#include <sstream>

namespace rws {

namespace {

constexpr std::array<const char*, 7> kWeekdays{"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};

// Collects field errors while reading a document.
class Reader {
 public:
  const Json* field(const Json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) {
      fail(path + key, "missing");
      return nullptr;
    }
    return &obj.at(key);
  }

  std::optional<int> integer(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    return v.get<int>();
  }

  std::optional<RunBounds> bounds(const Json& v, const std::string& path) {
    const Json* lo = field(v, "min", path + ".");
    const Json* hi = field(v, "max", path + ".");
    if (!lo || !hi) return std::nullopt;
    auto a = integer(*lo, path + ".min");
    auto b = integer(*hi, path + ".max");
    if (!a || !b) return std::nullopt;
    return RunBounds{*a, *b};
  }

  void fail(std::string field, std::string message) { errors.push_back({std::move(field), std::move(message)}); }

  void throw_if_failed() {
    if (!errors.empty()) throw InstanceError(errors);
  }

  std::vector<FieldError> errors;
};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

ProblemInstance instance_from_json(const Json& doc) {
  Reader r;
  if (!doc.is_object()) {
    r.fail("", "instance must be a JSON object");
    r.throw_if_failed();
  }

  std::vector<ShiftDescriptor> descriptors;
  if (const Json* shifts = r.field(doc, "shifts", ""); shifts) {
    if (!shifts->is_array()) {
      r.fail("shifts", "expected an array");
    } else {
      for (std::size_t i = 0; i < shifts->size(); ++i) {
        const std::string path = "shifts[" + std::to_string(i) + "]";
        const Json& s = (*shifts)[i];
        const Json* name = r.field(s, "name", path + ".");
        if (!name) continue;
        if (!name->is_string()) {
          r.fail(path + ".name", "expected a string");
          continue;
        }
        bool off = false;
        if (s.contains("dayOff")) {
          if (!s["dayOff"].is_boolean())
            r.fail(path + ".dayOff", "expected a boolean");
          else
            off = s["dayOff"].get<bool>();
        }
        descriptors.push_back({name->get<std::string>(), off});
      }
    }
  }
  r.throw_if_failed();
  ShiftAlphabet alphabet(descriptors);  // throws with its own field errors
  const int m = alphabet.size();

  int n = 0, w = 0;
  if (const Json* v = r.field(doc, "employees", "")) n = r.integer(*v, "employees").value_or(0);
  if (const Json* v = r.field(doc, "weekLength", "")) w = r.integer(*v, "weekLength").value_or(0);
  r.throw_if_failed();
  if (n < 1) r.fail("employees", "must be at least 1");
  if (w < 1) r.fail("weekLength", "must be at least 1");
  r.throw_if_failed();

  Matrix<int> req(m - 1, w, 0);
  if (const Json* rows = r.field(doc, "requirements", "")) {
    if (!rows->is_array() || static_cast<int>(rows->size()) != m - 1) {
      r.fail("requirements", "expected " + std::to_string(m - 1) + " rows, one per work shift");
    } else {
      for (int k = 0; k < m - 1; ++k) {
        const Json& row = (*rows)[k];
        const std::string path = "requirements[" + std::to_string(k) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != w) {
          r.fail(path, "expected " + std::to_string(w) + " entries");
          continue;
        }
        for (int j = 0; j < w; ++j)
          if (auto v = r.integer(row[j], path + "[" + std::to_string(j) + "]")) req(k, j) = *v;
      }
    }
  }

  std::vector<ForbiddenSequence> forbidden;
  if (doc.contains("forbiddenSequences")) {
    const Json& list = doc["forbiddenSequences"];
    if (!list.is_array()) {
      r.fail("forbiddenSequences", "expected an array");
    } else {
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "forbiddenSequences[" + std::to_string(i) + "]";
        const Json& seq = list[i];
        if (!seq.is_array() || seq.size() < 2 || seq.size() > 3) {
          r.fail(path, "expected a pair or triple of shift names");
          continue;
        }
        ForbiddenSequence ids;
        for (const auto& name : seq) {
          auto id = name.is_string() ? alphabet.find(name.get<std::string>()) : std::nullopt;
          if (!id) {
            r.fail(path, "unknown shift " + name.dump());
            break;
          }
          ids.push_back(*id);
        }
        if (ids.size() == seq.size()) forbidden.push_back(std::move(ids));
      }
    }
  }

  std::vector<RunBounds> runs(m, RunBounds{1, 1});
  if (const Json* rl = r.field(doc, "runLength", "")) {
    if (!rl->is_object()) {
      r.fail("runLength", "expected an object keyed by shift name");
    } else {
      for (int k = 0; k < m; ++k) {
        const std::string& name = alphabet.name(static_cast<ShiftId>(k));
        if (!rl->contains(name)) {
          r.fail("runLength." + name, "missing");
          continue;
        }
        if (auto b = r.bounds((*rl)[name], "runLength." + name)) runs[k] = *b;
      }
      for (const auto& [key, _] : rl->items())
        if (!alphabet.find(key)) r.fail("runLength." + key, "unknown shift");
    }
  }

  RunBounds work{1, 1};
  if (const Json* wb = r.field(doc, "workBlock", ""))
    if (auto b = r.bounds(*wb, "workBlock")) work = *b;
  r.throw_if_failed();

  return ProblemInstance(alphabet, n, w, std::move(req), compile_constraints(forbidden, m), std::move(runs), work);
}

Json instance_to_json(const ProblemInstance& inst) {
  const auto& shifts = inst.shifts();
  const int m = inst.shift_count();
  Json doc;
  Json list = Json::array();
  for (const auto& d : shifts.descriptors()) {
    Json s{{"name", d.name}};
    if (d.day_off) s["dayOff"] = true;
    list.push_back(s);
  }
  doc["shifts"] = list;
  doc["employees"] = inst.employees();
  doc["weekLength"] = inst.week_length();
  Json req = Json::array();
  for (int k = 0; k < m - 1; ++k) {
    auto row = inst.requirements().row(k);
    req.push_back(std::vector<int>(row.begin(), row.end()));
  }
  doc["requirements"] = req;

  const auto& C = inst.changes();
  auto id = [](int v) { return static_cast<ShiftId>(v); };
  std::vector<std::vector<std::uint8_t>> pair(m, std::vector<std::uint8_t>(m, 0));
  Json forbidden = Json::array();
  for (int e = 0; e < m; ++e)
    for (int f = 0; f < m; ++f) {
      bool all_zero = true;
      for (int g = 0; g < m && all_zero; ++g)
        all_zero = !C.allowed(id(e), id(f), id(g)) && !C.allowed(id(g), id(e), id(f));
      if (all_zero) {
        pair[e][f] = 1;
        forbidden.push_back({shifts.name(id(e)), shifts.name(id(f))});
      }
    }
  for (int e = 0; e < m; ++e)
    for (int f = 0; f < m; ++f)
      for (int g = 0; g < m; ++g)
        if (!C.allowed(id(e), id(f), id(g)) && !pair[e][f] && !pair[f][g])
          forbidden.push_back({shifts.name(id(e)), shifts.name(id(f)), shifts.name(id(g))});
  doc["forbiddenSequences"] = forbidden;

  Json runs = Json::object();
  for (int k = 0; k < m; ++k) {
    const auto& b = inst.run_length(id(k));
    runs[shifts.name(id(k))] = {{"min", b.min}, {"max", b.max}};
  }
  doc["runLength"] = runs;
  doc["workBlock"] = {{"min", inst.work_block().min}, {"max", inst.work_block().max}};
  return doc;
}

Json schedule_to_json(const Schedule& s, const ShiftAlphabet& shifts) {
  Json rows = Json::array();
  for (int i = 1; i <= s.rows(); ++i) {
    Json row = Json::array();
    for (int j = 1; j <= s.cols(); ++j) row.push_back(shifts.name(s.at(i, j)));
    rows.push_back(row);
  }
  return Json{{"rows", rows}};
}

Schedule schedule_from_json(const Json& doc, const ProblemInstance& inst) {
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array())
    throw Error("schedule document needs a \"rows\" array");
  const Json& rows = doc["rows"];
  if (static_cast<int>(rows.size()) != inst.employees())
    throw DimensionError("schedule has " + std::to_string(rows.size()) + " rows, instance has " +
                         std::to_string(inst.employees()) + " employees");
  Schedule s(inst.shape(), inst.shifts().day_off());
  for (int i = 0; i < inst.employees(); ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != inst.week_length())
      throw DimensionError("row " + std::to_string(i + 1) + " does not have " +
                           std::to_string(inst.week_length()) + " cells");
    for (int j = 0; j < inst.week_length(); ++j) {
      if (!row[j].is_string()) throw Error("row " + std::to_string(i + 1) + ": cells must be shift names");
      auto id = inst.shifts().find(row[j].get<std::string>());
      if (!id) throw Error("unknown shift " + row[j].dump());
      s.set(i + 1, j + 1, *id);
    }
  }
  return s;
}

std::string render_grid(const Schedule& s, const ShiftAlphabet& shifts) {
  std::string out = "Employee/day";
  for (int j = 0; j < s.cols(); ++j) (out += '\t') += kWeekdays[j % 7];
  out += '\n';
  for (int i = 1; i <= s.rows(); ++i) {
    out += std::to_string(i);
    for (int j = 1; j <= s.cols(); ++j) {
      out += '\t';
      if (!shifts.is_day_off(s.at(i, j))) out += shifts.name(s.at(i, j));
    }
    out += '\n';
  }
  return out;
}

Schedule parse_grid(std::string_view text, const ProblemInstance& inst) {
  std::vector<std::string> lines;
  for (auto& line : split(text, '\n'))
    if (!trim(line).empty()) lines.push_back(line);
  if (lines.empty() || trim(lines.front()).rfind("Employee/day", 0) != 0)
    throw Error("grid must start with an \"Employee/day\" header");
  lines.erase(lines.begin());
  if (static_cast<int>(lines.size()) != inst.employees())
    throw DimensionError("grid has " + std::to_string(lines.size()) + " rows, instance has " +
                         std::to_string(inst.employees()) + " employees");
  Schedule s(inst.shape(), inst.shifts().day_off());
  for (int i = 0; i < inst.employees(); ++i) {
    std::string line = lines[i];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto cells = split(line, '\t');
    // Trailing days off may have been stripped by an editor.
    if (static_cast<int>(cells.size()) > inst.week_length() + 1 || cells.size() < 2)
      throw DimensionError("grid row " + std::to_string(i + 1) + " does not have " +
                           std::to_string(inst.week_length()) + " cells");
    for (int j = 0; j < inst.week_length(); ++j) {
      std::string_view cell = j + 1 < static_cast<int>(cells.size()) ? trim(cells[j + 1]) : std::string_view{};
      if (cell.empty()) continue;
      auto id = inst.shifts().find(cell);
      if (!id) throw Error("unknown shift \"" + std::string(cell) + "\" in grid row " + std::to_string(i + 1));
      s.set(i + 1, j + 1, *id);
    }
  }
  return s;
}

Schedule parse_schedule(std::string_view text, const ProblemInstance& inst) {
  auto body = trim(text);
  if (!body.empty() && body.front() == '{') {
    Json doc;
    try {
      doc = Json::parse(body);
    } catch (const Json::parse_error& e) {
      throw Error(std::string("schedule JSON: ") + e.what());
    }
    return schedule_from_json(doc, inst);
  }
  return parse_grid(text, inst);
}

Json to_json(const WeekendScore& score) {
  return {{"weekendsOff", score.weekends_off}, {"negPoints", score.neg_points},
          {"longWeekends", score.long_weekends}};
}

Json to_json(const ValidationReport& report, const CycleShape& shape) {
  Json list = Json::array();
  for (const auto& v : report.violations) {
    Json positions = Json::array();
    for (auto p : v.positions) positions.push_back({{"row", p.row(shape)}, {"column", p.column(shape)}});
    list.push_back({{"kind", std::string(to_string(v.kind))}, {"positions", positions}, {"message", v.message}});
  }
  return {{"ok", report.ok()}, {"violations", list}};
}

Json to_json(const ClassSolution& cs) {
  return {{"id", choice_id(cs)}, {"blocks", cs.blocks()}, {"text", cs.to_string()}};
}

Json to_json(const ScoredLayout& sl) {
  return {{"id", choice_id(sl.layout)},
          {"work", sl.layout.work_order()},
          {"off", sl.layout.off_lengths()},
          {"text", sl.layout.to_string()},
          {"score", to_json(sl.score)}};
}

Json to_json(const TermCatalog& catalog, const ShiftAlphabet& shifts) {
  Json by_length = Json::object();
  for (const auto& [len, entries] : catalog.by_length()) {
    Json list = Json::array();
    for (const auto& e : entries)
      list.push_back({{"id", e.id.str()}, {"term", term_string(e.term, shifts)}, {"excluded", e.excluded}});
    by_length[std::to_string(len)] = list;
  }
  return {{"byLength", by_length}};
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string choice_id(const ClassSolution& cs) { return "c-" + hex64(fnv1a("class:" + cs.to_string())); }

std::string choice_id(const Layout& layout) { return "l-" + hex64(fnv1a("layout:" + layout.to_string())); }

}  // namespace rws
