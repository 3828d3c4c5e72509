#pragma once

// Stepwise sessions: one per problem instance, advanced by running stages
// and recording the decision maker's selections. Every state change is an
// event; live updates and replay from the log go through the same apply
// function.

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rws/documents.hpp"
#include "rws/pipeline.hpp"

namespace rws::service {

enum class Phase { defined, step1_done, step1_selected, step2_done, step2_selected, step3_done, step4_done };

std::string_view to_string(Phase p);
Phase parse_phase(std::string_view text);

/// An error with an HTTP-style status: 400 bad request, 404 unknown
/// session / choice / schedule, 409 wrong phase or a job already running.
class ApiError : public Error {
 public:
  ApiError(int status, const std::string& message, std::vector<FieldError> fields = {})
      : Error(message), status_(status), fields_(std::move(fields)) {}
  int status() const noexcept { return status_; }
  const std::vector<FieldError>& fields() const noexcept { return fields_; }

 private:
  int status_;
  std::vector<FieldError> fields_;
};

struct StageStatus {
  bool complete = false;    // no more items will arrive
  bool exhaustive = false;  // the search finished rather than stopping early
  bool running = false;
  std::int64_t nodes_explored = 0;
  Json params = Json::object();
};

/// Materialized session state. Copyable; equality of to_json() is the replay
/// check.
struct SessionState {
  std::string id;
  Json instance_doc;
  std::shared_ptr<const ProblemInstance> instance;
  Phase phase = Phase::defined;
  std::int64_t events = 0;

  StageStatus stage1, stage2, stage4;
  std::vector<ClassSolution> classes;
  std::optional<ClassSolution> selected_class;
  std::vector<ScoredLayout> layouts;
  std::optional<ScoredLayout> selected_layout;
  std::optional<TermCatalog> catalog;
  std::vector<Schedule> schedules;
};

/// Applies one logged event. Throws Error on a malformed event.
void apply_event(SessionState& state, const Json& event);
/// Rebuilds a session from its events.
SessionState replay(const std::vector<Json>& events);

Json state_to_json(const SessionState& s);
Json stage_results_json(const SessionState& s, int stage);
Json schedule_detail_json(const SessionState& s, std::size_t index);

struct RunRequest {
  std::optional<std::int64_t> node_budget;
  std::optional<std::array<std::int64_t, 3>> stage_budgets;
  std::optional<std::size_t> max_results;
  std::optional<std::int64_t> deadline_ms;
  std::optional<std::vector<int>> order;  // stage 2 only: search one fixed block order
  static RunRequest from_json(const Json& body, int stage);
  Json to_json() const;
};

struct AutopilotRequest {
  Choices choices;
  Budgets budgets;
  static AutopilotRequest from_json(const Json& body);
};

class SessionStore {
 public:
  /// With an empty directory sessions live in memory only. Otherwise each
  /// session has <id>.events.jsonl (append-only) and <id>.snapshot.json,
  /// and existing logs are replayed on construction.
  explicit SessionStore(std::filesystem::path directory = {});
  ~SessionStore();
  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  std::string create(const Json& instance_doc);
  std::vector<std::string> ids() const;

  /// Consistent copy of the current state.
  SessionState snapshot(const std::string& id) const;

  /// Starts a stage in the background and returns its job id.
  std::string run_stage(const std::string& id, int stage, const RunRequest& request);
  /// `choice` holds "choiceId", or "blocks" (stage 1) / "order" (stage 2).
  void select(const std::string& id, int stage, const Json& choice);
  void exclude_terms(const std::string& id, const std::vector<TermId>& ids, bool excluded);
  void cancel(const std::string& id);
  /// Runs every stage in the background, selecting by policy.
  std::string autopilot(const std::string& id, const AutopilotRequest& request);

  /// Blocks until no job is running; false on timeout.
  bool wait_idle(const std::string& id, std::chrono::milliseconds timeout) const;

  /// Events as written to the log (kept in memory as well).
  std::vector<Json> events(const std::string& id) const;

  /// Per-session runtime (state, log, worker thread); opaque to callers.
  struct Session;

 private:
  std::shared_ptr<Session> find(const std::string& id) const;
  void load_all();

  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace rws::service
