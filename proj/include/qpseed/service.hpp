#pragma once

#include <string>

#include "qpseed/json_io.hpp"

namespace httplib {
class Server;
}

namespace qpseed::service {

struct Reply {
  int status = 200;
  io::json body;
};

inline constexpr int kMaxExploreDepth = 6;
inline constexpr std::size_t kMaxExploreBudget = 5000;

Reply health();
Reply get_qp(const std::string& braid, const std::string& strands);
/// Body {qp, vertex}; vertex is a name, a face shorthand or a 1-based index.
Reply post_mutate(const std::string& body);
/// Body {qp, depth, budget}.
Reply post_explore(const std::string& body);

void register_routes(httplib::Server& server);

/// Blocks until the server stops. Returns false if the port cannot be bound.
bool serve(const std::string& host, int port);

}  // namespace qpseed::service
