#include "qpseed/service.hpp"

#include "httplib.h"

namespace qpseed::service {

using io::json;

namespace {

template <class F>
Reply guarded(F&& f) {
  try {
    return Reply{200, io::tagged(f())};
  } catch (const std::exception& e) {
    return Reply{io::is_malformed(e) ? 400 : 422, io::error_json(io::error_kind(e), e.what())};
  }
}

json parse_body(const std::string& body) {
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw io::FormatError("request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw io::FormatError(std::string("invalid JSON: ") + e.what());
  }
}

QP qp_field(const json& j) {
  if (!j.contains("qp")) throw io::FormatError("missing field \"qp\"");
  return io::qp_from_json(j.at("qp"));
}

long int_field(const json& j, const char* key, long fallback, long lo, long hi) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw io::FormatError(std::string("\"") + key + "\" must be an integer");
  long x = v.get<long>();
  if (x < lo || x > hi)
    throw io::FormatError(std::string("\"") + key + "\" must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

}  // namespace

Reply health() { return Reply{200, io::tagged({{"ok", true}})}; }

Reply get_qp(const std::string& braid, const std::string& strands) {
  return guarded([&] {
    std::optional<int> n;
    if (!strands.empty()) {
      try {
        std::size_t used = 0;
        n = std::stoi(strands, &used);
        if (used != strands.size()) throw std::invalid_argument(strands);
      } catch (const std::logic_error&) {
        throw io::FormatError("strands must be an integer");
      }
    }
    PlabicFence f = fence_from_braid(parse_braid(braid, n));
    json out = io::qp_to_json(build_qp(f));
    out["fence"] = io::fence_to_json(f);
    return out;
  });
}

Reply post_mutate(const std::string& body) {
  return guarded([&] {
    json j = parse_body(body);
    QP qp = qp_field(j);
    if (!j.contains("vertex")) throw io::FormatError("missing field \"vertex\"");
    const json& jv = j.at("vertex");
    std::optional<VertexId> v;
    if (jv.is_string()) {
      v = io::resolve_vertex(qp.quiver, jv.get<std::string>());
    } else if (jv.is_number_integer()) {
      long k = jv.get<long>();
      if (k >= 1 && static_cast<std::size_t>(k) <= qp.quiver.vertex_count()) v = static_cast<VertexId>(k - 1);
    }
    if (!v) throw io::FormatError("unknown vertex " + jv.dump());
    auto [next, log] = mutate(qp, *v);
    json cycles = io::words_to_json(next.quiver, empty_cycles(next, 4));
    return json{{"qp", io::qp_to_json(next)},
                {"log", io::log_to_json(qp, log)},
                {"flags", {{"two_acyclic", two_acyclic(next.quiver)}, {"empty_cycles", cycles}}}};
  });
}

Reply post_explore(const std::string& body) {
  return guarded([&] {
    json j = parse_body(body);
    QP qp = qp_field(j);
    ExploreOptions o;
    o.max_depth = static_cast<int>(int_field(j, "depth", 2, 0, kMaxExploreDepth));
    o.max_nodes = static_cast<std::size_t>(int_field(j, "budget", 500, 1, static_cast<long>(kMaxExploreBudget)));
    return io::graph_to_json(explore(qp, o));
  });
}

void register_routes(httplib::Server& server) {
  auto send = [](httplib::Response& res, const Reply& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get("/api/health", [send](const httplib::Request&, httplib::Response& res) { send(res, health()); });
  server.Get("/api/qp", [send](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("braid")) {
      send(res, Reply{400, io::error_json("MALFORMED_INPUT", "missing query parameter \"braid\"")});
      return;
    }
    send(res, get_qp(req.get_param_value("braid"), req.get_param_value("strands")));
  });
  server.Post("/api/mutate", [send](const httplib::Request& req, httplib::Response& res) { send(res, post_mutate(req.body)); });
  server.Post("/api/explore", [send](const httplib::Request& req, httplib::Response& res) { send(res, post_explore(req.body)); });
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
    res.status = 500;
    res.set_content(io::error_json("INTERNAL", "unhandled server error").dump(), "application/json");
  });
}

bool serve(const std::string& host, int port) {
  httplib::Server server;
  register_routes(server);
  return server.listen(host, port);
}

}  // namespace qpseed::service
