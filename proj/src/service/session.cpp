#include "rws/service/session.hpp"

#include <fstream>
#include <random>

#include "rws/validator.hpp"

namespace rws::service {

namespace {

constexpr std::array<std::string_view, 7> kPhases{"Defined",       "Step1Done", "Step1Selected", "Step2Done",
                                                  "Step2Selected", "Step3Done", "Step4Done"};

std::vector<int> int_list(const Json& v, const char* what) {
  if (v.is_string()) return parse_lengths(v.get<std::string>());
  if (v.is_array()) {
    std::vector<int> out;
    for (const auto& x : v) {
      if (!x.is_number_integer()) throw ApiError(400, std::string(what) + ": expected integers");
      out.push_back(x.get<int>());
    }
    return out;
  }
  throw ApiError(400, std::string(what) + ": expected a list of lengths");
}

Json layout_event_json(const Layout& l) { return {{"work", l.work_order()}, {"off", l.off_lengths()}}; }

Layout layout_from_event(const Json& j) {
  const auto work = j.at("work").get<std::vector<int>>();
  const auto off = j.at("off").get<std::vector<int>>();
  if (work.size() != off.size()) throw Error("layout event: work and off lengths differ in count");
  std::vector<BlockPair> pairs;
  for (std::size_t i = 0; i < work.size(); ++i) pairs.push_back({work[i], off[i]});
  return Layout(std::move(pairs));
}

ScoredLayout scored(const Layout& l, const ProblemInstance& inst) {
  return {l, inst.weekend_scoring_enabled() ? weekend_score(l, inst) : WeekendScore{}};
}

Json status_json(const StageStatus& st) {
  return {{"complete", st.complete},
          {"exhaustive", st.exhaustive},
          {"running", st.running},
          {"nodesExplored", st.nodes_explored},
          {"params", st.params}};
}

void reset_stage2(SessionState& s) {
  s.stage2 = {};
  s.layouts.clear();
  s.selected_layout.reset();
  s.catalog.reset();
}

void reset_stage4(SessionState& s) {
  s.stage4 = {};
  s.schedules.clear();
}

std::string random_id() {
  static std::mutex m;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(m);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return std::string(buf, 12);
}

}  // namespace

std::string_view to_string(Phase p) { return kPhases.at(static_cast<std::size_t>(p)); }

Phase parse_phase(std::string_view text) {
  for (std::size_t i = 0; i < kPhases.size(); ++i)
    if (kPhases[i] == text) return static_cast<Phase>(i);
  throw Error("unknown phase '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Events

void apply_event(SessionState& s, const Json& e) {
  const std::string type = e.at("type").get<std::string>();
  if (type == "create") {
    s = SessionState{};
    s.id = e.at("id").get<std::string>();
    s.instance_doc = e.at("instance");
    s.instance = std::make_shared<const ProblemInstance>(instance_from_json(s.instance_doc));
  } else if (!s.instance) {
    throw Error("event before create");
  } else if (type == "run_start") {
    const int stage = e.at("stage").get<int>();
    StageStatus running;
    running.running = true;
    running.params = e.value("params", Json::object());
    if (stage == 1) {
      s.stage1 = running;
      s.classes.clear();
      s.selected_class.reset();
      reset_stage2(s);
      reset_stage4(s);
      s.phase = Phase::defined;
    } else if (stage == 2) {
      if (!s.selected_class) throw Error("stage 2 needs a selected class solution");
      reset_stage2(s);
      reset_stage4(s);
      s.stage2 = running;
      s.phase = Phase::step1_selected;
    } else if (stage == 4) {
      if (!s.catalog) throw Error("stage 4 needs a selected layout");
      reset_stage4(s);
      s.stage4 = running;
      s.phase = Phase::step3_done;
    } else {
      throw Error("no such stage");
    }
  } else if (type == "run_complete") {
    const int stage = e.at("stage").get<int>();
    StageStatus* st = stage == 1 ? &s.stage1 : stage == 2 ? &s.stage2 : stage == 4 ? &s.stage4 : nullptr;
    if (!st) throw Error("no such stage");
    st->running = false;
    st->complete = true;
    st->exhaustive = e.at("exhaustive").get<bool>();
    st->nodes_explored = e.at("nodesExplored").get<std::int64_t>();
    if (e.contains("error")) st->params["error"] = e["error"];
    const Json& items = e.at("items");
    if (stage == 1) {
      s.classes.clear();
      for (const auto& b : items) s.classes.emplace_back(b.get<std::vector<int>>());
      s.phase = Phase::step1_done;
    } else if (stage == 2) {
      s.layouts.clear();
      for (const auto& l : items) s.layouts.push_back(scored(layout_from_event(l), *s.instance));
      s.phase = Phase::step2_done;
    } else {
      s.schedules.clear();
      for (const auto& r : items) s.schedules.push_back(schedule_from_json(r, *s.instance));
      s.phase = Phase::step4_done;
    }
  } else if (type == "select") {
    const int stage = e.at("stage").get<int>();
    if (stage == 1) {
      s.selected_class = ClassSolution(e.at("blocks").get<std::vector<int>>());
      reset_stage2(s);
      reset_stage4(s);
      s.phase = Phase::step1_selected;
    } else if (stage == 2) {
      if (!s.selected_class) throw Error("layout selected without a class solution");
      reset_stage4(s);
      s.selected_layout = scored(layout_from_event(e.at("layout")), *s.instance);
      // Step 3 runs implicitly on selection.
      s.catalog = TermCatalog::build(distinct_lengths(s.selected_layout->layout), *s.instance);
      s.phase = Phase::step3_done;
    } else {
      throw Error("only stages 1 and 2 take a selection");
    }
  } else if (type == "exclude") {
    if (!s.catalog) throw Error("no term catalog");
    std::vector<TermId> ids;
    for (const auto& t : e.at("termIds")) ids.push_back(TermId::parse(t.get<std::string>()));
    s.catalog = s.catalog->with_excluded(ids, e.value("excluded", true));
    reset_stage4(s);
    s.phase = Phase::step3_done;
  } else if (type == "cancel") {
    // Marker only; the interrupted run's run_complete carries the outcome.
  } else {
    throw Error("unknown event type '" + type + "'");
  }
  ++s.events;
}

SessionState replay(const std::vector<Json>& events) {
  SessionState s;
  for (const auto& e : events) apply_event(s, e);
  return s;
}

Json state_to_json(const SessionState& s) {
  Json doc;
  doc["id"] = s.id;
  doc["phase"] = std::string(to_string(s.phase));
  doc["events"] = s.events;
  doc["instance"] = s.instance_doc;
  doc["weekendScoringEnabled"] = s.instance && s.instance->weekend_scoring_enabled();
  Json stages;
  for (int stage : {1, 2, 4}) stages[std::to_string(stage)] = stage_results_json(s, stage);
  doc["stages"] = stages;
  doc["selectedClass"] = s.selected_class ? to_json(*s.selected_class) : Json();
  doc["selectedLayout"] = s.selected_layout ? to_json(*s.selected_layout) : Json();
  doc["terms"] = s.catalog && s.instance ? to_json(*s.catalog, s.instance->shifts()) : Json();
  return doc;
}

Json stage_results_json(const SessionState& s, int stage) {
  Json items = Json::array();
  const StageStatus* st = nullptr;
  if (stage == 1) {
    st = &s.stage1;
    for (const auto& c : s.classes) items.push_back(to_json(c));
  } else if (stage == 2) {
    st = &s.stage2;
    for (const auto& l : s.layouts) items.push_back(to_json(l));
  } else if (stage == 4) {
    st = &s.stage4;
    for (std::size_t i = 0; i < s.schedules.size(); ++i) {
      Json item = schedule_to_json(s.schedules[i], s.instance->shifts());
      item["index"] = i;
      item["score"] = to_json(schedule_score(s.schedules[i], *s.instance));
      items.push_back(std::move(item));
    }
  } else {
    throw ApiError(400, "results exist for stages 1, 2 and 4");
  }
  Json doc = status_json(*st);
  doc["stage"] = stage;
  doc["items"] = items;
  return doc;
}

Json schedule_detail_json(const SessionState& s, std::size_t index) {
  if (index >= s.schedules.size()) throw ApiError(404, "no schedule " + std::to_string(index));
  const Schedule& sc = s.schedules[index];
  Json doc = schedule_to_json(sc, s.instance->shifts());
  doc["index"] = index;
  doc["grid"] = render_grid(sc, s.instance->shifts());
  doc["score"] = to_json(schedule_score(sc, *s.instance));
  doc["validation"] = to_json(validate(sc, *s.instance), s.instance->shape());
  return doc;
}

// ---------------------------------------------------------------------------
// Requests

RunRequest RunRequest::from_json(const Json& body, int stage) {
  RunRequest r;
  if (body.is_null()) return r;
  if (!body.is_object()) throw ApiError(400, "run body must be a JSON object");
  auto positive = [&](const char* key) -> std::optional<std::int64_t> {
    if (!body.contains(key)) return std::nullopt;
    const Json& v = body[key];
    if (!v.is_number_integer() || v.get<std::int64_t>() <= 0)
      throw ApiError(400, std::string(key) + " must be a positive integer");
    return v.get<std::int64_t>();
  };
  for (const auto& [key, _] : body.items())
    if (key != "nodeBudget" && key != "stageBudgets" && key != "maxResults" && key != "deadlineMs" && key != "order")
      throw ApiError(400, "unknown run parameter '" + key + "'");
  r.node_budget = positive("nodeBudget");
  if (auto m = positive("maxResults")) r.max_results = static_cast<std::size_t>(*m);
  r.deadline_ms = positive("deadlineMs");
  if (body.contains("stageBudgets")) {
    if (stage != 1) throw ApiError(400, "stageBudgets applies to stage 1 only");
    const Json& b = body["stageBudgets"];
    if (!b.is_array() || b.size() != 3) throw ApiError(400, "stageBudgets must hold three node counts");
    std::array<std::int64_t, 3> a{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!b[i].is_number_integer()) throw ApiError(400, "stageBudgets must hold integers");
      a[i] = b[i].get<std::int64_t>();
    }
    if (!(a[0] >= 1 && a[0] < a[1] && a[1] < a[2])) throw ApiError(400, "stageBudgets must strictly increase");
    r.stage_budgets = a;
  }
  if (body.contains("order")) {
    if (stage != 2) throw ApiError(400, "order applies to stage 2 only");
    r.order = int_list(body["order"], "order");
  }
  if (stage == 1 && r.node_budget && *r.node_budget < 4) throw ApiError(400, "nodeBudget for stage 1 must be >= 4");
  return r;
}

Json RunRequest::to_json() const {
  Json j = Json::object();
  if (node_budget) j["nodeBudget"] = *node_budget;
  if (stage_budgets) j["stageBudgets"] = *stage_budgets;
  if (max_results) j["maxResults"] = *max_results;
  if (deadline_ms) j["deadlineMs"] = *deadline_ms;
  if (order) j["order"] = *order;
  return j;
}

AutopilotRequest AutopilotRequest::from_json(const Json& body) {
  AutopilotRequest r;
  if (body.is_null()) return r;
  if (!body.is_object()) throw ApiError(400, "autopilot body must be a JSON object");
  try {
    if (body.contains("policy")) r.choices.policy = parse_policy(body["policy"].get<std::string>());
    if (body.contains("class")) r.choices.class_blocks = int_list(body["class"], "class");
    if (body.contains("layout")) r.choices.layout_order = int_list(body["layout"], "layout");
    if (body.contains("preferredLength")) r.choices.preferred_length = body["preferredLength"].get<int>();
    if (body.contains("budgets")) r.budgets = budgets_from_json(body["budgets"]);
  } catch (const ApiError&) {
    throw;
  } catch (const std::exception& e) {
    throw ApiError(400, e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Store

struct SessionStore::Session {
  mutable std::mutex m;
  mutable std::condition_variable idle;
  SessionState state;
  std::vector<Json> log;
  std::filesystem::path log_path, snapshot_path;
  bool running = false;
  std::string job_id;
  int stage_running = 0;
  int jobs = 0;
  std::jthread worker;  // last: joined before the rest is destroyed

  // Applies and persists one event; the caller holds `m`.
  void commit(Json event) {
    apply_event(state, event);
    log.push_back(event);
    if (log_path.empty()) return;
    {
      std::ofstream out(log_path, std::ios::app);
      out << event.dump() << '\n';
      if (!out) throw Error("cannot append to " + log_path.string());
    }
    auto tmp = snapshot_path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << state_to_json(state).dump(1) << '\n';
    }
    std::filesystem::rename(tmp, snapshot_path);
  }
};

SessionStore::SessionStore(std::filesystem::path directory) : dir_(std::move(directory)) {
  if (!dir_.empty()) {
    std::filesystem::create_directories(dir_);
    load_all();
  }
}

SessionStore::~SessionStore() {
  std::lock_guard lock(mutex_);
  for (auto& [_, s] : sessions_) s->worker.request_stop();
  for (auto& [_, s] : sessions_)
    if (s->worker.joinable()) s->worker.join();
}

void SessionStore::load_all() {
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    const auto name = entry.path().filename().string();
    const std::string suffix = ".events.jsonl";
    if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
    const std::string id = name.substr(0, name.size() - suffix.size());
    auto s = std::make_shared<Session>();
    std::ifstream in(entry.path());
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) s->log.push_back(Json::parse(line));
    s->state = replay(s->log);
    s->log_path = entry.path();
    s->snapshot_path = dir_ / (id + ".snapshot.json");
    // A run cut short by a restart is closed with what the log knows.
    std::lock_guard lock(s->m);
    for (int stage : {1, 2, 4}) {
      const StageStatus& st = stage == 1 ? s->state.stage1 : stage == 2 ? s->state.stage2 : s->state.stage4;
      if (st.running)
        s->commit({{"type", "run_complete"},
                   {"stage", stage},
                   {"items", Json::array()},
                   {"exhaustive", false},
                   {"nodesExplored", 0},
                   {"error", "interrupted by a service restart"}});
    }
    sessions_[id] = s;
  }
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ApiError(404, "no session '" + id + "'");
  return it->second;
}

std::string SessionStore::create(const Json& instance_doc) {
  try {
    instance_from_json(instance_doc);
  } catch (const InstanceError& e) {
    throw ApiError(400, "invalid instance", e.errors());
  }
  auto s = std::make_shared<Session>();
  std::string id;
  {
    std::lock_guard lock(mutex_);
    do id = random_id();
    while (sessions_.count(id));
    sessions_[id] = s;
  }
  if (!dir_.empty()) {
    s->log_path = dir_ / (id + ".events.jsonl");
    s->snapshot_path = dir_ / (id + ".snapshot.json");
  }
  std::lock_guard lock(s->m);
  s->commit({{"type", "create"}, {"id", id}, {"instance", instance_doc}});
  return id;
}

std::vector<std::string> SessionStore::ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

SessionState SessionStore::snapshot(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->m);
  return s->state;
}

std::vector<Json> SessionStore::events(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->m);
  return s->log;
}

bool SessionStore::wait_idle(const std::string& id, std::chrono::milliseconds timeout) const {
  auto s = find(id);
  std::unique_lock lock(s->m);
  return s->idle.wait_for(lock, timeout, [&] { return !s->running; });
}

namespace {

// Work done by a job outside the session lock. Each returns the items for
// the run_complete event plus the search statistics.
struct StageOutcome {
  Json items = Json::array();
  bool exhaustive = false;
  std::int64_t nodes = 0;
};

}  // namespace

// Runs one stage inside a job thread: logs run_start, searches without the
// lock while streaming partial items into the state, logs run_complete.
static void run_stage_in_job(SessionStore::Session& s, int stage, const RunRequest& req, std::stop_token stop) {
  std::shared_ptr<const ProblemInstance> inst;
  std::optional<ClassSolution> cs;
  std::optional<ScoredLayout> layout;
  std::optional<TermCatalog> catalog;
  {
    std::lock_guard lock(s.m);
    s.stage_running = stage;
    s.commit({{"type", "run_start"}, {"stage", stage}, {"jobId", s.job_id}, {"params", req.to_json()}});
    inst = s.state.instance;
    cs = s.state.selected_class;
    layout = s.state.selected_layout;
    catalog = s.state.catalog;
  }
  std::optional<SearchControl::Clock::time_point> deadline;
  if (req.deadline_ms) deadline = SearchControl::Clock::now() + std::chrono::milliseconds(*req.deadline_ms);
  SearchControl control(stop, deadline);

  StageOutcome out;
  std::string error;
  try {
    if (stage == 1) {
      ClassSolutionOptions opt;
      if (req.stage_budgets) {
        opt.budgets.nodes = *req.stage_budgets;
      } else if (req.node_budget) {
        const auto nb = *req.node_budget;
        const auto b2 = std::min<std::int64_t>(1'000'000, nb / 2);
        opt.budgets.nodes = {std::min<std::int64_t>(10'000, b2 / 2), b2, nb};
      }
      if (req.max_results) opt.max_results = *req.max_results;
      auto r = enumerate_class_solutions(*inst, opt, control, [&](const ClassSolution& c) {
        std::lock_guard lock(s.m);
        s.state.classes.push_back(c);
      });
      for (const auto& c : r.solutions) out.items.push_back(c.blocks());
      out.exhaustive = r.exhaustive;
      out.nodes = r.nodes_explored;
    } else if (stage == 2) {
      std::vector<ScoredLayout> layouts;
      if (req.order) {
        auto r = layouts_for_order(*req.order, *inst, req.node_budget.value_or(100'000'000),
                                   req.max_results.value_or(std::numeric_limits<std::size_t>::max()), control);
        layouts = std::move(r.layouts);
        out.exhaustive = r.exhaustive;
        out.nodes = r.nodes_explored;
      } else {
        LayoutSearchOptions opt;
        if (req.node_budget) opt.node_budget_per_permutation = *req.node_budget;
        if (req.max_results) opt.max_results = *req.max_results;
        auto r = enumerate_layouts(*cs, *inst, opt, control, [&](const ScoredLayout& l) {
          std::lock_guard lock(s.m);
          s.state.layouts.push_back(l);
        });
        layouts = std::move(r.layouts);
        out.exhaustive = r.exhaustive;
        out.nodes = r.nodes_explored;
      }
      for (const auto& l : layouts) out.items.push_back(layout_event_json(l.layout));
    } else {
      AssignmentOptions opt;
      if (req.node_budget) opt.node_budget = *req.node_budget;
      if (req.max_results) opt.max_solutions = *req.max_results;
      auto r = assign_shifts(layout->layout, *catalog, *inst, opt, control, [&](const Schedule& sc) {
        std::lock_guard lock(s.m);
        s.state.schedules.push_back(sc);
      });
      for (const auto& sc : r.schedules) out.items.push_back(schedule_to_json(sc, inst->shifts()));
      out.exhaustive = r.exhaustive;
      out.nodes = r.nodes_explored;
    }
  } catch (const std::exception& e) {
    error = e.what();
  }
  std::lock_guard lock(s.m);
  Json done{{"type", "run_complete"},
            {"stage", stage},
            {"items", out.items},
            {"exhaustive", out.exhaustive},
            {"nodesExplored", out.nodes}};
  if (!error.empty()) done["error"] = error;
  s.commit(std::move(done));
  s.stage_running = 0;
}

std::string SessionStore::run_stage(const std::string& id, int stage, const RunRequest& request) {
  if (stage != 1 && stage != 2 && stage != 4)
    throw ApiError(400, stage == 3 ? "stage 3 runs when a layout is selected" : "no such stage");
  auto s = find(id);
  std::lock_guard lock(s->m);
  if (s->running) throw ApiError(409, "a job is already running in this session");
  if (stage == 2 && !s->state.selected_class) throw ApiError(409, "select a class solution first");
  if (stage == 4 && !s->state.catalog) throw ApiError(409, "select a layout first");
  s->job_id = id + "-" + std::to_string(++s->jobs);
  s->running = true;
  Session* raw = s.get();
  s->worker = std::jthread([raw, stage, request](std::stop_token stop) {
    run_stage_in_job(*raw, stage, request, stop);
    std::lock_guard lock(raw->m);
    raw->running = false;
    raw->idle.notify_all();
  });
  return s->job_id;
}

void SessionStore::select(const std::string& id, int stage, const Json& choice) {
  auto s = find(id);
  std::lock_guard lock(s->m);
  if (s->running) throw ApiError(409, "a job is running in this session");
  const SessionState& st = s->state;
  if (!choice.is_object()) throw ApiError(400, "selection body must be a JSON object");
  if (stage == 1) {
    std::optional<ClassSolution> pick;
    if (choice.contains("choiceId")) {
      if (!st.stage1.complete) throw ApiError(409, "stage 1 has no results yet");
      for (const auto& c : st.classes)
        if (choice_id(c) == choice["choiceId"]) pick = c;
      if (!pick) throw ApiError(404, "unknown class solution id");
    } else if (choice.contains("blocks")) {
      // A class named directly is checked with the default stage budgets.
      ClassSolution cs;
      try {
        cs = ClassSolution::checked(int_list(choice["blocks"], "blocks"), compute_bounds(*st.instance));
      } catch (const ApiError&) {
        throw;
      } catch (const Error& e) {
        throw ApiError(400, e.what());
      }
      const StageBudgets budgets;
      Verdict v = Verdict::budget_exhausted;
      for (int k = 1; k <= 3 && v == Verdict::budget_exhausted; ++k)
        v = feasibility_test(cs.blocks(), *st.instance, budgets.nodes[k - 1], k).status;
      if (v != Verdict::feasible)
        throw ApiError(409, v == Verdict::infeasible ? "class solution is not feasible"
                                                     : "class solution could not be confirmed within budget");
      pick = cs;
    } else {
      throw ApiError(400, "expected choiceId or blocks");
    }
    s->commit({{"type", "select"}, {"stage", 1}, {"blocks", pick->blocks()}});
  } else if (stage == 2) {
    if (!st.selected_class) throw ApiError(409, "select a class solution first");
    if (!st.stage2.complete) throw ApiError(409, "stage 2 has no results yet");
    std::optional<std::size_t> idx;
    if (choice.contains("choiceId")) {
      for (std::size_t i = 0; i < st.layouts.size(); ++i)
        if (choice_id(st.layouts[i].layout) == choice["choiceId"]) idx = i;
      if (!idx) throw ApiError(404, "unknown layout id");
    } else if (choice.contains("order")) {
      idx = find_layout_by_order(st.layouts, int_list(choice["order"], "order"));
      if (!idx) throw ApiError(404, "no layout with that block order; run stage 2 with \"order\" to search it");
    } else {
      throw ApiError(400, "expected choiceId or order");
    }
    s->commit({{"type", "select"}, {"stage", 2}, {"layout", layout_event_json(st.layouts[*idx].layout)}});
  } else {
    throw ApiError(400, "only stages 1 and 2 take a selection");
  }
}

void SessionStore::exclude_terms(const std::string& id, const std::vector<TermId>& ids, bool excluded) {
  auto s = find(id);
  std::lock_guard lock(s->m);
  if (s->running) throw ApiError(409, "a job is running in this session");
  if (!s->state.catalog) throw ApiError(409, "select a layout first");
  Json list = Json::array();
  for (const auto& t : ids) {
    if (!s->state.catalog->contains(t)) throw ApiError(404, "unknown term " + t.str());
    list.push_back(t.str());
  }
  s->commit({{"type", "exclude"}, {"termIds", list}, {"excluded", excluded}});
}

void SessionStore::cancel(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->m);
  if (!s->running) throw ApiError(409, "no job is running");
  s->commit({{"type", "cancel"}, {"jobId", s->job_id}, {"stage", s->stage_running}});
  s->worker.request_stop();
}

std::string SessionStore::autopilot(const std::string& id, const AutopilotRequest& request) {
  auto s = find(id);
  std::lock_guard lock(s->m);
  if (s->running) throw ApiError(409, "a job is already running in this session");
  s->job_id = id + "-" + std::to_string(++s->jobs);
  s->running = true;
  Session* raw = s.get();
  s->worker = std::jthread([raw, request](std::stop_token stop) {
    auto finish = [&] {
      std::lock_guard lock(raw->m);
      raw->running = false;
      raw->idle.notify_all();
    };
    auto state = [&] {
      std::lock_guard lock(raw->m);
      return raw->state;
    };
    auto select = [&](Json event) {
      std::lock_guard lock(raw->m);
      raw->commit(std::move(event));
    };
    const Choices& ch = request.choices;
    const Budgets& b = request.budgets;

    if (ch.class_blocks) {
      // Record the explicit class as a one-item stage-1 result.
      ClassSolution cs(*ch.class_blocks);
      {
        std::lock_guard lock(raw->m);
        raw->commit({{"type", "run_start"}, {"stage", 1}, {"jobId", raw->job_id}, {"params", {{"blocks", cs.blocks()}}}});
      }
      auto inst = state().instance;
      FeasibilityVerdict v;
      std::int64_t nodes = 0;
      for (int k = 1; k <= 3; ++k) {
        v = feasibility_test(cs.blocks(), *inst, b.stage1.nodes[k - 1], k);
        nodes += v.nodes_explored;
        if (v.status != Verdict::budget_exhausted) break;
      }
      Json items = Json::array();
      if (v.status == Verdict::feasible) items.push_back(cs.blocks());
      select({{"type", "run_complete"},
              {"stage", 1},
              {"items", items},
              {"exhaustive", v.status != Verdict::budget_exhausted},
              {"nodesExplored", nodes}});
    } else {
      RunRequest r1;
      r1.stage_budgets = b.stage1.nodes;
      if (b.max_classes != std::numeric_limits<std::size_t>::max()) r1.max_results = b.max_classes;
      run_stage_in_job(*raw, 1, r1, stop);
    }
    auto st = state();
    auto ci = choose_class(st.classes, ch);
    if (!ci || stop.stop_requested()) return finish();
    select({{"type", "select"}, {"stage", 1}, {"blocks", st.classes[*ci].blocks()}});

    RunRequest r2;
    r2.node_budget = b.layout_nodes_per_permutation;
    run_stage_in_job(*raw, 2, r2, stop);
    st = state();
    auto li = choose_layout(st.layouts, ch);
    if (!li && ch.layout_order && !stop.stop_requested()) {
      RunRequest fixed;
      fixed.order = ch.layout_order;
      fixed.node_budget = b.order_nodes;
      fixed.max_results = 1;
      run_stage_in_job(*raw, 2, fixed, stop);
      st = state();
      if (!st.layouts.empty()) li = 0;
    }
    if (!li || stop.stop_requested()) return finish();
    select({{"type", "select"}, {"stage", 2}, {"layout", layout_event_json(st.layouts[*li].layout)}});

    RunRequest r4;
    r4.node_budget = b.assignment_nodes;
    r4.max_results = b.max_schedules;
    run_stage_in_job(*raw, 4, r4, stop);
    finish();
  });
  return s->job_id;
}

}  // namespace rws::service
