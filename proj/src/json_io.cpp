#include "qpseed/json_io.hpp"

#include <cstdio>
#include <regex>
#include <set>

#include "qpseed/path_algebra.hpp"

namespace qpseed::io {

json tagged(json j) {
  j["schema"] = kSchema;
  return j;
}

json error_json(const std::string& kind, const std::string& message) {
  return tagged({{"error", {{"kind", kind}, {"message", message}}}});
}

json fence_to_json(const PlabicFence& f) { return {{"strands", f.strands}, {"letters", f.levels}}; }

namespace {

json word_names(const Quiver& q, const Word& w) {
  json out = json::array();
  for (ArrowId a : w) out.push_back(q.arrow(a).name);
  return out;
}

json word_names(const std::map<ArrowId, std::string>& names, const Word& w) {
  json out = json::array();
  for (ArrowId a : w) out.push_back(names.at(a));
  return out;
}

json vertex_word(const Quiver& q, const std::vector<VertexId>& w) {
  json out = json::array();
  for (VertexId v : w) out.push_back(q.vertex_name(v));
  return out;
}

json poly_to_json(const std::map<ArrowId, std::string>& names, const PathPoly& p) {
  json out = json::array();
  for (const auto& [w, c] : p) out.push_back({{"coef", to_string(c)}, {"path", word_names(names, w)}});
  return out;
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string string_of(const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

json potential_to_json(const Quiver& q, const Potential& w) {
  json out = json::array();
  for (const auto& [word, c] : w.terms()) out.push_back({{"coef", to_string(c)}, {"cycle", word_names(q, word)}});
  return out;
}

json words_to_json(const Quiver& q, const std::vector<Word>& words) {
  json out = json::array();
  for (const auto& w : words) out.push_back(word_names(q, w));
  return out;
}

json qp_to_json(const QP& qp) {
  const Quiver& q = qp.quiver;
  json arrows = json::array();
  for (const auto& [id, a] : q.arrows())
    arrows.push_back({{"id", a.name}, {"key", id}, {"tail", q.vertex_name(a.tail)}, {"head", q.vertex_name(a.head)}});
  return {{"vertices", q.vertex_names()},
          {"arrows", arrows},
          {"potential", potential_to_json(q, qp.potential)},
          {"next_arrow", q.next_arrow_id()}};
}

QP qp_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("QP must be a JSON object");
  QP qp;
  std::set<std::string> seen;
  const json& vs = field(j, "vertices");
  if (!vs.is_array()) throw FormatError("\"vertices\" must be an array");
  for (const auto& v : vs) {
    std::string name = string_of(v, "vertex name");
    if (name.empty() || !seen.insert(name).second) throw FormatError("duplicate or empty vertex name \"" + name + "\"");
    qp.quiver.add_vertex(name);
  }
  const json& as = field(j, "arrows");
  if (!as.is_array()) throw FormatError("\"arrows\" must be an array");
  std::set<std::string> arrow_names;
  for (const auto& a : as) {
    std::string id = string_of(field(a, "id"), "arrow id");
    std::string tail = string_of(field(a, "tail"), "arrow tail");
    std::string head = string_of(field(a, "head"), "arrow head");
    auto t = qp.quiver.find_vertex(tail), h = qp.quiver.find_vertex(head);
    if (!t || !h) throw FormatError("arrow \"" + id + "\" has an unknown endpoint");
    if (*t == *h) throw FormatError("arrow \"" + id + "\" is a loop");
    if (id.empty() || !arrow_names.insert(id).second) throw FormatError("duplicate or empty arrow id \"" + id + "\"");
    if (a.contains("key")) {
      const json& k = a.at("key");
      if (!k.is_number_unsigned() || k.get<ArrowId>() == 0) throw FormatError("arrow key must be a positive integer");
      if (qp.quiver.has_arrow(k.get<ArrowId>())) throw FormatError("duplicate arrow key " + k.dump());
      qp.quiver.insert_arrow(Arrow{k.get<ArrowId>(), *t, *h, id});
    } else {
      qp.quiver.add_arrow(*t, *h, id);
    }
  }
  if (j.contains("next_arrow")) {
    const json& n = j.at("next_arrow");
    if (!n.is_number_unsigned()) throw FormatError("\"next_arrow\" must be a nonnegative integer");
    qp.quiver.reserve_ids(n.get<ArrowId>());
  }
  if (j.contains("potential")) {
    const json& ps = j.at("potential");
    if (!ps.is_array()) throw FormatError("\"potential\" must be an array");
    for (const auto& t : ps) {
      Rational c = rational_from_json(field(t, "coef"));
      const json& cyc = field(t, "cycle");
      if (!cyc.is_array() || cyc.empty()) throw FormatError("\"cycle\" must be a nonempty array");
      Word w;
      for (const auto& n : cyc) {
        auto a = qp.quiver.find_arrow(string_of(n, "cycle entry"));
        if (!a) throw FormatError("cycle mentions unknown arrow " + n.dump());
        w.push_back(*a);
      }
      if (!is_closed_path(qp.quiver, w)) throw FormatError("potential term " + cyc.dump() + " is not a cycle");
      qp.potential.add(cyc_normalize(qp.quiver, w), c);
    }
  }
  return qp;
}

json log_to_json(const QP& input, const MutationLog& log) {
  const auto& n = log.names;
  json comps = json::array();
  for (const auto& c : log.composites) comps.push_back({{"arrow", n.at(c.id)}, {"in", n.at(c.in)}, {"out", n.at(c.out)}});
  json rev = json::array();
  for (const auto& r : log.reversed) rev.push_back({{"from", n.at(r.original)}, {"to", n.at(r.reversed)}});
  json reds = json::array();
  for (const auto& r : log.reductions) {
    json passes = json::array();
    for (const auto& p : r.passes) passes.push_back({{"U", poly_to_json(n, p.U)}, {"V", poly_to_json(n, p.V)}});
    reds.push_back({{"pair", {r.a_name, r.b_name}}, {"coefficient", to_string(r.coefficient)}, {"passes", passes}});
  }
  return {{"vertex", input.quiver.vertex_name(log.vertex)},
          {"composites", comps},
          {"reversed", rev},
          {"reductions", reds},
          {"result_hash", hex(log.result_hash)}};
}

json trace_report_to_json(const QP& qp, const TraceReport& r) {
  json wit = json::array();
  for (const auto& w : r.witnesses) wit.push_back({{"degree", w.degree}, {"word", word_names(qp.quiver, w.word)}});
  return {{"truncation", r.truncation},
          {"dims", r.dims},
          {"all_zero", r.all_zero()},
          {"label", "EVIDENCE"},
          {"witnesses", wit},
          {"cyclic_words", r.words},
          {"relations", r.relations}};
}

json certificate_to_json(const PlabicFence& f, const RigidityCertificate& c) {
  json edges = json::array();
  for (const auto& e : c.edges) {
    json je{{"edge", e.edge + 1}, {"verdict", to_string(e.verdict)}};
    je["face"] = e.face ? json(*e.face) : json(nullptr);
    if (e.verdict == EdgeVerdict::SourcedVia || e.verdict == EdgeVerdict::Fail) je["sequence"] = e.sequence;
    if (!e.detail.empty()) je["detail"] = e.detail;
    edges.push_back(std::move(je));
  }
  json out{{"fence", fence_to_json(f)}, {"edges", edges}, {"result", c.pass ? "PASS" : "FAIL"}};
  if (c.failed_edge) out["failed_edge"] = *c.failed_edge + 1;
  if (c.failed_state) out["failed_state"] = qp_to_json(*c.failed_state);
  return out;
}

namespace {

json steps_to_json(const Quiver& q, const std::vector<CertificateStep>& steps) {
  json out = json::array();
  for (const auto& s : steps) {
    json reds = json::array();
    for (const auto& [a, b] : s.reductions) reds.push_back({a, b});
    out.push_back({{"vertex", q.vertex_name(s.vertex)},
                   {"two_acyclic_before", s.two_acyclic_before},
                   {"reductions", reds},
                   {"qp_hash", hex(s.qp_hash)}});
  }
  return out;
}

}  // namespace

json graph_to_json(const ExchangeGraph& g, bool with_qps) {
  json nodes = json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    const Quiver& q = n.qp.quiver;
    json jn{{"index", i}, {"key", n.key}, {"word", vertex_word(q, n.word)}, {"certificate", steps_to_json(q, n.certificate)}};
    if (with_qps) jn["qp"] = qp_to_json(n.qp);
    nodes.push_back(std::move(jn));
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    const Quiver& q = g.nodes[e.from].qp.quiver;
    edges.push_back({{"from", e.from}, {"vertex", q.vertex_name(e.vertex)}, {"to", e.to},
                     {"to_vertex", g.nodes[e.to].qp.quiver.vertex_name(e.to_vertex)}});
  }
  json out{{"status", to_string(g.status)},
           {"nodes", nodes},
           {"edges", edges},
           {"node_count", g.nodes.size()},
           {"expansions", g.expansions},
           {"possible_false_negatives", g.possible_false_negatives}};
  out["depth_bound"] = g.depth_bound >= 0 ? json(g.depth_bound) : json(nullptr);
  return out;
}

json certificate_log_to_json(const QP& qp, const CertificateLog& log) {
  return {{"steps", steps_to_json(qp.quiver, log.steps)}, {"result", qp_to_json(log.result)}};
}

json probe_to_json(const QP& qp, const ProbeVerdict& v) {
  json out{{"status", to_string(v.status)}, {"depth", v.depth}, {"nodes", v.nodes}};
  if (v.status == ProbeStatus::Counterexample) out["word"] = vertex_word(qp.quiver, v.word);
  return out;
}

std::optional<VertexId> resolve_vertex(const Quiver& q, const std::string& token) {
  if (auto v = q.find_vertex(token)) return v;
  static const std::regex shorthand("([F-Z])([0-9]+)");
  std::smatch m;
  if (std::regex_match(token, m, shorthand)) {
    int level = m[1].str()[0] - 'F' + 1;
    return q.find_vertex("L" + std::to_string(level) + "#" + m[2].str());
  }
  return std::nullopt;
}

std::vector<VertexId> parse_vertex_word(const Quiver& q, const std::string& text) {
  std::vector<VertexId> out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    auto v = resolve_vertex(q, tok);
    if (!v) throw FormatError("unknown vertex \"" + tok + "\"");
    out.push_back(*v);
    tok.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t')
      flush();
    else
      tok += c;
  }
  flush();
  return out;
}

Rational rational_from_json(const json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    if (j.is_number_float()) return Rational(j.get<double>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  throw FormatError("expected a rational number, got " + j.dump());
}

std::complex<double> complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return {rational_from_json(j).get_d(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw FormatError("expected a number or [re, im], got " + j.dump());
}

template <>
json matrix_to_json(const Matrix<Rational>& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    out.push_back(std::move(r));
  }
  return out;
}

template <>
json matrix_to_json(const Matrix<std::complex<double>>& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back({x.real(), x.imag()});
    out.push_back(std::move(r));
  }
  return out;
}

template <>
json matrix_to_json(const Matrix<int>& m) {
  return json(m);
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const FormatError*>(&e)) return "MALFORMED_INPUT";
  if (dynamic_cast<const json::exception*>(&e)) return "MALFORMED_INPUT";
  if (dynamic_cast<const BraidError*>(&e)) return "BAD_BRAID";
  if (dynamic_cast<const FenceError*>(&e)) return "FENCE";
  if (dynamic_cast<const AugError*>(&e)) return "AUGMENTATION";
  if (dynamic_cast<const MutationError*>(&e)) return "MUTATION_PRECONDITION";
  if (dynamic_cast<const ReductionError*>(&e)) return "REDUCTION";
  if (dynamic_cast<const CertificateFailure*>(&e)) return "CERTIFICATE_FAIL";
  if (dynamic_cast<const MismatchError*>(&e)) return "MISMATCH";
  if (dynamic_cast<const SignCoherenceError*>(&e)) return "SIGN_COHERENCE";
  if (dynamic_cast<const AlgebraError*>(&e)) return "ALGEBRA";
  return "INTERNAL";
}

bool is_malformed(const std::exception& e) {
  return dynamic_cast<const FormatError*>(&e) || dynamic_cast<const json::exception*>(&e) ||
         dynamic_cast<const BraidError*>(&e);
}

}  // namespace qpseed::io
