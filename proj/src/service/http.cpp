#include "rws/service/http.hpp"

#include <httplib.h>

namespace rws::service {

namespace {

void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json();
  try {
    return Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    throw ApiError(400, std::string("body is not valid JSON: ") + e.what());
  }
}

int stage_param(const httplib::Request& req) {
  const std::string& s = req.matches[2];
  return std::stoi(s);
}

// Wraps a handler so engine and API errors become JSON error responses.
template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const ApiError& e) {
      Json body{{"error", e.what()}};
      if (!e.fields().empty()) {
        Json fields = Json::array();
        for (const auto& fe : e.fields()) fields.push_back({{"field", fe.field}, {"message", fe.message}});
        body["fields"] = fields;
      }
      send(res, e.status(), body);
    } catch (const InstanceError& e) {
      Json fields = Json::array();
      for (const auto& fe : e.errors()) fields.push_back({{"field", fe.field}, {"message", fe.message}});
      send(res, 400, {{"error", "invalid instance"}, {"fields", fields}});
    } catch (const std::exception& e) {
      send(res, 400, {{"error", e.what()}});
    }
  };
}

}  // namespace

void register_routes(httplib::Server& server, SessionStore& store) {
  const std::string sid = "/sessions/([A-Za-z0-9_-]+)";

  server.Post("/sessions", guarded([&](const httplib::Request& req, httplib::Response& res) {
    Json body = parse_body(req);
    if (!body.is_object()) throw ApiError(400, "expected {\"instance\": {...}}");
    const Json& doc = body.contains("instance") ? body["instance"] : body;
    send(res, 201, {{"sessionId", store.create(doc)}});
  }));

  server.Get("/sessions", guarded([&](const httplib::Request&, httplib::Response& res) {
    send(res, 200, {{"sessions", store.ids()}});
  }));

  server.Get(sid, guarded([&](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    Json doc = state_to_json(store.snapshot(id));
    send(res, 200, doc);
  }));

  server.Post(sid + "/stages/([0-9]+)/run", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const int stage = stage_param(req);
    auto job = store.run_stage(req.matches[1], stage, RunRequest::from_json(parse_body(req), stage));
    send(res, 202, {{"jobId", job}});
  }));

  server.Get(sid + "/stages/([0-9]+)/results", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    if (req.has_param("waitMs"))
      store.wait_idle(id, std::chrono::milliseconds(std::stol(req.get_param_value("waitMs"))));
    send(res, 200, stage_results_json(store.snapshot(id), stage_param(req)));
  }));

  server.Post(sid + "/stages/([0-9]+)/select", guarded([&](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    store.select(id, stage_param(req), parse_body(req));
    auto st = store.snapshot(id);
    send(res, 200, {{"phase", std::string(to_string(st.phase))}});
  }));

  server.Get(sid + "/terms", guarded([&](const httplib::Request& req, httplib::Response& res) {
    auto st = store.snapshot(req.matches[1]);
    if (!st.catalog) throw ApiError(409, "select a layout first");
    send(res, 200, to_json(*st.catalog, st.instance->shifts()));
  }));

  server.Post(sid + "/terms/exclude", guarded([&](const httplib::Request& req, httplib::Response& res) {
    Json body = parse_body(req);
    if (!body.is_object() || !body.contains("termIds") || !body["termIds"].is_array())
      throw ApiError(400, "expected {\"termIds\": [...]}");
    std::vector<TermId> ids;
    for (const auto& t : body["termIds"]) {
      if (!t.is_string()) throw ApiError(400, "term ids are strings like \"5:3\"");
      ids.push_back(TermId::parse(t.get<std::string>()));
    }
    store.exclude_terms(req.matches[1], ids, body.value("excluded", true));
    auto st = store.snapshot(req.matches[1]);
    send(res, 200, to_json(*st.catalog, st.instance->shifts()));
  }));

  server.Get(sid + "/schedules/([0-9]+)", guarded([&](const httplib::Request& req, httplib::Response& res) {
    auto st = store.snapshot(req.matches[1]);
    send(res, 200, schedule_detail_json(st, std::stoul(std::string(req.matches[2]))));
  }));

  server.Post(sid + "/cancel", guarded([&](const httplib::Request& req, httplib::Response& res) {
    store.cancel(req.matches[1]);
    send(res, 200, {{"cancelled", true}});
  }));

  server.Post(sid + "/autopilot", guarded([&](const httplib::Request& req, httplib::Response& res) {
    auto job = store.autopilot(req.matches[1], AutopilotRequest::from_json(parse_body(req)));
    send(res, 202, {{"jobId", job}});
  }));

  server.set_pre_routing_handler([](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    return httplib::Server::HandlerResponse::Unhandled;
  });
}

bool serve(SessionStore& store, const std::string& host, int port) {
  httplib::Server server;
  register_routes(server, store);
  return server.listen(host, port);
}

}  // namespace rws::service
