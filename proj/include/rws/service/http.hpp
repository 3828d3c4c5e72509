#pragma once

// HTTP/JSON front end of the session store.

#include <string>

#include "rws/service/session.hpp"

namespace httplib {
class Server;
}

namespace rws::service {

/// Installs every route on `server`. Errors come back as
/// {"error": message, "fields": [{"field", "message"}]} with status 400, 404
/// or 409.
void register_routes(httplib::Server& server, SessionStore& store);

/// Blocks serving on host:port until the process is stopped.
bool serve(SessionStore& store, const std::string& host, int port);

}  // namespace rws::service
