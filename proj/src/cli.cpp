#include "qpseed/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "qpseed/json_io.hpp"
#include "qpseed/service.hpp"

namespace qpseed::cli {

using io::json;

namespace {

struct Source {
  std::string braid;
  int strands = 0;
  std::string in;
  CLI::Option* braid_opt = nullptr;
};

void add_braid(CLI::App* cmd, Source& s, bool allow_in) {
  auto* b = cmd->add_option("--braid", s.braid, "positive braid word, e.g. \"1 2 1\"");
  s.braid_opt = b;
  cmd->add_option("--strands", s.strands, "number of strands (default: inferred)")->check(CLI::Range(1, 64));
  if (allow_in) cmd->add_option("--in", s.in, "QP JSON file")->excludes(b);
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw io::FormatError("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw io::FormatError(path + ": " + e.what());
  }
}

PlabicFence fence_of(const Source& s) {
  if (s.braid_opt->count() == 0) throw UsageError("--braid is required");
  std::optional<int> n;
  if (s.strands > 0) n = s.strands;
  return fence_from_braid(parse_braid(s.braid, n));
}

QP qp_of(const Source& s) {
  if (s.in.empty()) {
    if (s.braid_opt->count() == 0) throw UsageError("one of --braid or --in is required");
    return build_qp(fence_of(s));
  }
  json j = read_json_file(s.in);
  if (j.is_object() && j.contains("qp") && !j.contains("vertices")) return io::qp_from_json(j.at("qp"));
  return io::qp_from_json(j);
}

template <class T>
std::vector<T> values(const json& j, const char* key, T (*conv)(const json&)) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array())
    throw io::FormatError(std::string("point must contain an array \"") + key + "\"");
  std::vector<T> out;
  for (const auto& x : j.at(key)) out.push_back(conv(x));
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quivers with potential from plabic fences: mutation, rigidity and exchange graphs", "qpseed"};
  app.require_subcommand(1);
  std::string out_path;

  auto* qp_cmd = app.add_subcommand("qp", "build or mutate a QP");
  qp_cmd->require_subcommand(1);
  Source build_src;
  auto* build = qp_cmd->add_subcommand("build", "QP of the plabic fence of a braid");
  add_braid(build, build_src, false);
  Source mut_src;
  std::string seq;
  auto* mut = qp_cmd->add_subcommand("mutate", "mutate along a vertex sequence");
  add_braid(mut, mut_src, true);
  mut->add_option("--seq", seq, "vertices, comma separated")->required();

  Source ex_src;
  bool exhaustive = false;
  int max_depth = -1;
  std::size_t max_nodes = 10000;
  auto* ex = app.add_subcommand("explore", "enumerate the exchange graph");
  add_braid(ex, ex_src, true);
  auto* exh = ex->add_flag("--exhaustive", exhaustive, "explore until closed");
  ex->add_option("--max-depth", max_depth, "depth bound")->check(CLI::NonNegativeNumber)->excludes(exh);
  ex->add_option("--max-nodes", max_nodes, "node budget")->check(CLI::PositiveNumber);
  bool no_qps = false;
  ex->add_flag("--no-qps", no_qps, "omit node QPs from the output");

  Source rig_src;
  int truncate = 8;
  auto* rig = app.add_subcommand("rigidity", "truncated trace-space dimensions");
  add_braid(rig, rig_src, true);
  rig->add_option("--truncate", truncate, "truncation degree")->check(CLI::Range(1, 64));

  Source cert_src;
  auto* cert = app.add_subcommand("certify", "rigidity certificate of a fence");
  add_braid(cert, cert_src, false);

  Source probe_src;
  int probe_depth = 6;
  std::size_t probe_budget = 100000;
  auto* probe = app.add_subcommand("probe", "search mutation words for a 2-cycle");
  add_braid(probe, probe_src, true);
  probe->add_option("--depth", probe_depth, "word length bound")->check(CLI::NonNegativeNumber);
  probe->add_option("--budget", probe_budget, "node budget")->check(CLI::PositiveNumber);

  Source fill_src;
  std::string fill_seq;
  auto* fill = app.add_subcommand("filling", "certificate log for a mutation word");
  add_braid(fill, fill_src, true);
  fill->add_option("--seq", fill_seq, "vertices, comma separated")->required();

  auto* aug = app.add_subcommand("aug", "augmentation variety");
  aug->require_subcommand(1);
  Source aug_src;
  std::string point_path;
  bool numeric = false;
  auto* res = aug->add_subcommand("residual", "evaluate 1 + P at a point");
  add_braid(res, aug_src, false);
  res->add_option("--point", point_path, "JSON {\"z\":[...],\"t\":[...]}")->required();
  res->add_flag("--numeric", numeric, "complex double arithmetic");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* srv = app.add_subcommand("serve", "HTTP API");
  srv->add_option("--port", port, "port")->check(CLI::Range(1, 65535));
  srv->add_option("--host", host, "bind address");

  for (auto* leaf : {build, mut, ex, rig, cert, probe, fill, res})
    leaf->add_option("--out", out_path, "write JSON here instead of stdout");

  auto usage = [&](const std::string& msg) {
    err << io::error_json("USAGE", msg).dump() << "\n";
    return 2;
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return usage(e.what());
  }

  auto emit = [&](const json& j) {
    std::string text = io::tagged(j).dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(out_path);
      if (!f) throw io::FormatError("cannot write " + out_path);
      f << text;
    }
  };

  try {
    if (*build) {
      PlabicFence f = fence_of(build_src);
      json j = io::qp_to_json(build_qp(f));
      j["fence"] = io::fence_to_json(f);
      emit(j);
    } else if (*mut) {
      QP qp = qp_of(mut_src);
      std::vector<VertexId> word = io::parse_vertex_word(qp.quiver, seq);
      if (word.empty()) throw UsageError("--seq is empty");
      json logs = json::array();
      QP cur = qp;
      for (VertexId v : word) {
        auto [next, log] = mutate(cur, v);
        logs.push_back(io::log_to_json(cur, log));
        cur = std::move(next);
      }
      emit({{"qp", io::qp_to_json(cur)}, {"log", logs}});
    } else if (*ex) {
      if (!exhaustive && max_depth < 0) throw UsageError("explore needs --exhaustive or --max-depth");
      ExploreOptions o;
      o.exhaustive = exhaustive;
      o.max_depth = max_depth;
      o.max_nodes = max_nodes;
      emit(io::graph_to_json(explore(qp_of(ex_src), o), !no_qps));
    } else if (*rig) {
      QP qp = qp_of(rig_src);
      emit(io::trace_report_to_json(qp, trace_space_dims(qp, truncate)));
    } else if (*cert) {
      PlabicFence f = fence_of(cert_src);
      RigidityCertificate c = rigidity_certificate(f);
      emit(io::certificate_to_json(f, c));
      if (!c.pass) {
        err << io::error_json("CERTIFICATE_FAIL", "rigidity certificate failed at edge " +
                                                      std::to_string(*c.failed_edge + 1))
                   .dump()
            << "\n";
        return 1;
      }
    } else if (*probe) {
      QP qp = qp_of(probe_src);
      ProbeVerdict v = probe_nondegeneracy(qp, probe_depth, probe_budget);
      emit(io::probe_to_json(qp, v));
      if (v.status == ProbeStatus::Counterexample) {
        err << io::error_json("COUNTEREXAMPLE", "mutation word reaches a 2-cycle").dump() << "\n";
        return 1;
      }
    } else if (*fill) {
      QP qp = qp_of(fill_src);
      std::vector<VertexId> word = io::parse_vertex_word(qp.quiver, fill_seq);
      emit(io::certificate_log_to_json(qp, filling_certificate(qp, word)));
    } else if (*res) {
      BraidMatrixSystem sys = make_system(braid_from_fence(fence_of(aug_src)));
      json point = read_json_file(point_path);
      json j{{"strands", sys.n},
             {"word", sys.word},
             {"marked_strands", sys.marked},
             {"z_degrees", io::matrix_to_json(residual_z_degrees(sys))}};
      bool zero = false;
      if (numeric) {
        auto m = residual(sys, values(point, "z", &io::complex_from_json), values(point, "t", &io::complex_from_json));
        j["mode"] = "numeric";
        j["residual"] = io::matrix_to_json(m);
        j["max_abs"] = max_abs(m);
        zero = max_abs(m) < 1e-9;
      } else {
        auto m = residual(sys, values(point, "z", &io::rational_from_json), values(point, "t", &io::rational_from_json));
        j["mode"] = "rational";
        j["residual"] = io::matrix_to_json(m);
        zero = is_zero(m);
      }
      j["on_variety"] = zero;
      emit(j);
      if (!zero) {
        err << io::error_json("NOT_ON_VARIETY", "residual is nonzero at the given point").dump() << "\n";
        return 1;
      }
    } else if (*srv) {
      out << io::tagged({{"listening", {{"host", host}, {"port", port}}}}).dump() << std::endl;
      if (!service::serve(host, port)) {
        err << io::error_json("SERVE", "cannot bind " + host + ":" + std::to_string(port)).dump() << "\n";
        return 1;
      }
    }
  } catch (const UsageError& e) {
    return usage(e.what());
  } catch (const std::exception& e) {
    err << io::error_json(io::error_kind(e), e.what()).dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qpseed::cli
