// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <complex>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qpseed/augvar.hpp"
#include "qpseed/fence.hpp"
#include "qpseed/path_algebra.hpp"
#include "qpseed/qp_mutation.hpp"
#include "qpseed/rigidity.hpp"
#include "qpseed/seed_walker.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/planted.hpp"

#ifndef QPSEED_TREFOIL_POINT
#define QPSEED_TREFOIL_POINT ""
#endif

using namespace qpseed;
using fixtures::fence;
using fixtures::make_qp;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  std::string failure;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      failure = what;
    }
  }
  std::string summary() const { return pass ? note.str() : failure; }
};

struct Criterion {
  int number;
  std::string title;
  double seconds_limit;  // <= 0: no time bound
  std::function<void(Outcome&)> body;
};

// ---------------------------------------------------------------- 1

void fence_fixtures(Outcome& o) {
  QP a2 = build_qp(fence("1 1 1", 2));
  QP a2_expect = make_qp({"L1#1", "L1#2"}, {{"x", "L1#1", "L1#2"}});
  o.require(a2.quiver.vertex_names() == a2_expect.quiver.vertex_names(), "A2 vertices differ");
  o.require(canonical_form(a2) == canonical_form(a2_expect), "A2 QP differs");

  QP t = build_qp(fence("1 2 1 2 1 2", 3));
  // F1 = L1#1, F2 = L1#2, G1 = L2#1, G2 = L2#2 in scan order; cycles written in path order
  QP t_expect = make_qp({"L1#1", "L2#1", "L1#2", "L2#2"},
                        {{"a1", "L2#1", "L1#1"}, {"a2", "L1#1", "L1#2"}, {"a3", "L1#2", "L2#1"},
                         {"a4", "L2#1", "L2#2"}, {"a5", "L2#2", "L1#2"}},
                        {{"1", {"a4", "a5", "a3"}}, {"-1", {"a2", "a3", "a1"}}});
  o.require(t.quiver.vertex_names() == t_expect.quiver.vertex_names(), "T33 vertices differ");
  o.require(canonical_form(t) == canonical_form(t_expect), "T33 QP differs");
  o.note << "A2 and T33 match";
}

// ---------------------------------------------------------------- 2

void involution(Outcome& o) {
  std::mt19937_64 rng(2024);
  int fences = 0, checks = 0;
  while (fences < 100) {
    PlabicFence f = fixtures::random_fence(rng, 4, 10);
    QP qp = build_qp(f);
    if (qp.quiver.vertex_count() == 0) continue;
    ++fences;
    for (VertexId v = 0; v < qp.quiver.vertex_count(); ++v) {
      QP twice = mutate(mutate(qp, v).first, v).first;
      ++checks;
      o.require(equivalent_up_to_rescaling(twice, qp),
                "mu o mu != id on " + fixtures::describe(f) + " at " + qp.quiver.vertex_name(v));
    }
  }
  o.note << fences << " fences, " << checks << " vertex checks";
}

// ---------------------------------------------------------------- 3, 4, 5

std::string sigma1(int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += "1 ";
  return s;
}

struct Run {
  std::string label;
  QP root;
  ExchangeGraph graph;
};

std::vector<Run>& catalan_runs() {
  static std::vector<Run> runs;
  return runs;
}

void fz_consistency(Outcome& o, const std::vector<Run>& runs) {
  std::size_t edges = 0;
  for (const auto& r : runs) {
    const auto& g = r.graph;
    for (const auto& e : g.edges) {
      const ExplorationNode& u = g.nodes[e.from];
      QP m = mutate(u.qp, e.vertex).first;
      oracle::IntMatrix stacked = u.seed.B;
      stacked.insert(stacked.end(), u.seed.C.begin(), u.seed.C.end());
      oracle::IntMatrix fz = oracle::matrix_mutation(stacked, e.vertex);
      fz.resize(u.seed.B.size());
      o.require(b_matrix(m.quiver) == fz, "B mismatch in " + r.label);
      ++edges;
    }
  }
  o.note << edges << " edges rechecked";
}

void catalan(Outcome& o) {
  const std::size_t expect[] = {2, 5, 14, 42, 132};
  auto& runs = catalan_runs();
  runs.clear();
  for (int n = 2; n <= 6; ++n) {
    QP qp = build_qp(fence(sigma1(n), 2));
    ExploreOptions opts;
    opts.exhaustive = true;
    ExchangeGraph g = explore(qp, opts);
    std::size_t oracle_count = oracle::framed_orbit_count(b_matrix(qp.quiver));
    o.require(g.status == GraphStatus::Complete, "incomplete run for n=" + std::to_string(n));
    o.require(g.nodes.size() == expect[n - 2], "n=" + std::to_string(n) + " gave " + std::to_string(g.nodes.size()));
    o.require(oracle_count == expect[n - 2], "oracle disagrees for n=" + std::to_string(n));
    o.note << g.nodes.size() << (n < 6 ? "," : "");
    runs.push_back({"sigma1^" + std::to_string(n), qp, std::move(g)});
  }
}

std::vector<Run> bounded_runs(Outcome& o) {
  std::vector<Run> runs;
  ExploreOptions opts;
  opts.max_depth = 8;
  opts.max_nodes = 4000;
  QP t = fixtures::t33();
  runs.push_back({"T33", t, explore(t, opts)});
  std::mt19937_64 rng(55);
  while (runs.size() < 3) {
    PlabicFence f = fixtures::random_fence(rng, 3, 7, 4);
    QP qp = build_qp(f);
    if (qp.quiver.vertex_count() < 2) continue;
    runs.push_back({fixtures::describe(f), qp, explore(qp, opts)});
  }
  for (const auto& r : runs)
    o.require(r.graph.status != GraphStatus::Budget, "budget hit in " + r.label);
  return runs;
}

void certificates(Outcome& o, const std::vector<Run>& runs) {
  std::size_t nodes = 0, certs = 0;
  for (const auto& r : runs) {
    for (const auto& n : r.graph.nodes) {
      ++nodes;
      o.require(two_acyclic(n.qp.quiver), "2-cycle at a node of " + r.label);
      if (n.word.empty()) continue;
      try {
        CertificateLog log = filling_certificate(r.root, n.word);
        o.require(qp_hash(log.result) == qp_hash(n.qp), "certificate replay differs in " + r.label);
        ++certs;
      } catch (const std::exception& e) {
        o.require(false, std::string("certificate failed in ") + r.label + ": " + e.what());
      }
    }
  }
  o.note << nodes << " nodes in " << runs.size() << " runs, " << certs << " certificates";
}

// ---------------------------------------------------------------- 6

void planted(Outcome& o) {
  fixtures::PlantedReductions gen(6);
  int ok = 0;
  for (int i = 0; i < 200; ++i) {
    auto c = gen.next();
    auto r = local_reduce(c.qp, c.a, c.b);
    bool good = std::holds_alternative<ReducedPair>(r) && std::get<ReducedPair>(r).qp.potential == c.expected;
    o.require(good, "planted case " + std::to_string(i) + " not recovered");
    ok += good;
  }
  o.note << ok << "/200 recovered";
}

// ---------------------------------------------------------------- 7

void triple_move(Outcome& o) {
  // p21: 2 -> 1, p23: 2 -> 3, p31: 3 -> 1, so p23 p31 is parallel to p21
  QP qp = make_qp({"1", "2", "3"}, {{"p21", "2", "1"}, {"p23", "2", "3"}, {"p31", "3", "1"}});
  const Quiver& q = qp.quiver;
  auto w = [&](std::vector<std::string> names) { return fixtures::word_of(q, names); };
  auto poly = [&](std::vector<std::pair<int, std::vector<std::string>>> terms) {
    PathPoly p;
    for (auto& [c, names] : terms) add_term(p, w(names), Rational(c));
    return p;
  };
  using M = std::vector<std::vector<PathPoly>>;
  M R{{{}, poly({{1, {"p21"}}, {1, {"p23", "p31"}}}), poly({{1, {"p31"}}})},
      {poly({{1, {"p21"}}}), {}, poly({{1, {"p23"}}})},
      {poly({{1, {"p31"}}}), poly({{1, {"p23"}}}), {}}};
  // R' written with q_ij, relabeled q_ij -> p_ij
  M Rp{{{}, poly({{1, {"p21"}}}), poly({{1, {"p31"}}})},
       {poly({{1, {"p21"}}, {-1, {"p23", "p31"}}}), {}, poly({{1, {"p23"}}})},
       {poly({{1, {"p31"}}}), poly({{1, {"p23"}}}), {}}};
  SubstitutionRules phi{{*q.find_arrow("p21"), poly({{1, {"p21"}}, {-1, {"p23", "p31"}}})}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      o.require(substitute(q, R[i][j], phi) == Rp[i][j],
                "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") differs");
  o.note << "phi(R) == R' entrywise";
}

// ---------------------------------------------------------------- 8

void degeneracy(Outcome& o) {
  QP e = fixtures::empty_two_cycle();
  o.require(!two_acyclic(e.quiver), "empty 2-cycle QP reported 2-acyclic");
  o.require(empty_cycles(e, 2).size() == 1, "empty 2-cycle not listed");
  ProbeVerdict pe = probe_nondegeneracy(e, 4, 1000);
  o.require(pe.status == ProbeStatus::Counterexample && pe.word.empty(), "empty 2-cycle QP not flagged at depth 0");

  QP c3 = fixtures::empty_three_cycle();
  o.require(two_acyclic(c3.quiver), "empty 3-cycle should start 2-acyclic");
  o.require(empty_cycles(c3, 3).size() == 1, "empty 3-cycle not listed");
  QP m = mutate(c3, 0).first;
  o.require(!two_acyclic(m.quiver) && !empty_cycles(m, 2).empty(), "mutation did not produce an empty 2-cycle");
  ProbeVerdict pc = probe_nondegeneracy(c3, 4, 1000);
  o.require(pc.status == ProbeStatus::Counterexample && pc.word.size() == 1, "empty 3-cycle not flagged after one step");
  o.note << "empty 2-cycle at depth 0, empty 3-cycle at depth 1";
}

// ---------------------------------------------------------------- 9

void rigidity(Outcome& o) {
  for (auto [name, qp] : {std::pair{"TRI", fixtures::tri()}, std::pair{"T33", fixtures::t33()}}) {
    TraceReport r = trace_space_dims(qp, 8);
    o.require(r.all_zero(), std::string(name) + " has nonzero trace dims");
    o.require(oracle::trace_dims(qp, 8) == r.dims, std::string(name) + " disagrees with the dense oracle");
  }
  std::mt19937_64 rng(909);
  for (int i = 0; i < 20; ++i) {
    PlabicFence f = fixtures::random_fence_with_faces(rng, 4, 10);
    o.require(trace_space_dims(build_qp(f), 8).all_zero(), "nonzero trace dims on " + fixtures::describe(f));
  }
  TraceReport ctl = trace_space_dims(fixtures::empty_three_cycle(), 8);
  o.require(ctl.dim(3) >= 1, "W = 0 control has dim_3 = 0");
  int passed = 0;
  for (int i = 0; i < 50; ++i) {
    PlabicFence f = fixtures::random_fence(rng, 4, 12);
    bool ok = rigidity_certificate(f).pass;
    o.require(ok, "certificate failed on " + fixtures::describe(f));
    passed += ok;
  }
  o.note << "control dim_3 = " << ctl.dim(3) << ", certificates " << passed << "/50";
}

// ---------------------------------------------------------------- 10

void source_sequences(Outcome& o) {
  std::mt19937_64 rng(1010);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    PlabicFence f = fixtures::random_fence(rng, 5, 12);
    for (std::size_t len = 1; len <= f.size(); ++len) {
      PlabicFence part = prefix(f, len);
      auto face = face_with_right_edge(part, len - 1);
      if (!face) continue;
      QP qp = build_qp(part);
      std::vector<VertexId> seq;
      for (const auto& name : source_sequence(part, len - 1)) seq.push_back(*qp.quiver.find_vertex(name));
      VertexId fe = *qp.quiver.find_vertex(face->id);
      QP after = seq.empty() ? qp : mutate_sequence(qp, seq).first;
      o.require(is_source(after.quiver, fe),
                face->id + " not a source on " + fixtures::describe(part));
      ++checked;
    }
  }
  o.note << "200 fences, " << checked << " prefix faces";
}

// ---------------------------------------------------------------- 11

void augvar_checks(Outcome& o) {
  using C = std::complex<double>;
  std::mt19937_64 rng(1111);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    int n = 2 + static_cast<int>(rng() % 3);
    BraidWord b{n, {}};
    for (int k = static_cast<int>(rng() % 6); k > 0; --k) b.letters.push_back(1 + static_cast<int>(rng() % (n - 1)));
    BraidMatrixSystem s = make_system(b);
    std::vector<C> z, t;
    for (std::size_t k = 0; k < s.length(); ++k) z.emplace_back(u(rng), u(rng));
    for (std::size_t k = 0; k < s.components(); ++k) t.emplace_back(u(rng), u(rng));
    Matrix<C> l = residual(s, z, t, Fold::Left), r = residual(s, z, t, Fold::Right);
    double diff = 0;
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) diff = std::max(diff, std::abs(l[a][c] - r[a][c]));
    o.require(diff < 1e-9, "fold orders differ numerically");
    // det P, P = residual - 1
    Matrix<C> p = l;
    for (int a = 0; a < n; ++a) p[a][a] -= 1.0;
    C det = 1;
    for (int c = 0; c < n; ++c) {
      int piv = c;
      for (int rr = c + 1; rr < n; ++rr)
        if (std::abs(p[rr][c]) > std::abs(p[piv][c])) piv = rr;
      if (piv != c) {
        std::swap(p[piv], p[c]);
        det = -det;
      }
      det *= p[c][c];
      for (int rr = c + 1; rr < n; ++rr) {
        C f = p[rr][c] / p[c][c];
        for (int k = c; k < n; ++k) p[rr][k] -= f * p[c][k];
      }
    }
    C expect = (s.length() % 2 ? -1.0 : 1.0);
    for (C x : t) expect *= x;
    o.require(std::abs(det - expect) < 1e-9 * std::max(1.0, std::abs(expect)), "determinant law fails");

    std::vector<Rational> zq, tq;
    for (std::size_t k = 0; k < s.length(); ++k) zq.emplace_back(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3);
    for (std::size_t k = 0; k < s.components(); ++k) tq.emplace_back(static_cast<long>(rng() % 4) + 1, 1 + rng() % 2);
    for (auto& x : zq) x.canonicalize();
    for (auto& x : tq) x.canonicalize();
    o.require(residual(s, zq, tq, Fold::Left) == residual(s, zq, tq, Fold::Right), "fold orders differ exactly");
  }

  std::string path = QPSEED_TREFOIL_POINT;
  std::ifstream in(path);
  if (path.empty() || !in) {
    o.require(false, "trefoil oracle point missing (" + path + ")");
    return;
  }
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    std::vector<Rational> z, t;
    for (const auto& x : j.at("z")) z.push_back(parse_rational(x.get<std::string>()));
    for (const auto& x : j.at("t")) t.push_back(parse_rational(x.get<std::string>()));
    BraidMatrixSystem tre = make_system(parse_braid("1 1 1", 2));
    o.require(tre.length() == 5 && tre.components() == 1, "trefoil system shape");
    o.require(is_zero(residual(tre, z, t)), "trefoil oracle point is not on the variety");
    o.note << "100 random inputs; trefoil point z=" << j.at("z").dump() << " t=" << j.at("t").dump();
  } catch (const std::exception& e) {
    o.require(false, std::string("trefoil point unreadable: ") + e.what());
  }
}

}  // namespace

int main() {
  std::vector<Run> bounded;
  std::vector<Criterion> criteria{
      {1, "fence QP fixtures", 1, fence_fixtures},
      {2, "mutation involution on 100 random fences", 30, involution},
      {4, "Catalan counts for sigma1^n, n = 2..6", 120, catalan},
      {3, "FZ consistency along every explored edge", 0,
       [&](Outcome& o) {
         bounded = bounded_runs(o);
         std::vector<Run> all = catalan_runs();
         all.insert(all.end(), bounded.begin(), bounded.end());
         fz_consistency(o, all);
       }},
      {5, "2-acyclicity and filling certificates on explored nodes", 0,
       [&](Outcome& o) {
         std::vector<Run> all = catalan_runs();
         all.insert(all.end(), bounded.begin(), bounded.end());
         certificates(o, all);
       }},
      {6, "planted reductions recover W'", 0, planted},
      {7, "triple-move substitution maps R to R'", 0, triple_move},
      {8, "degeneracy detection", 0, degeneracy},
      {9, "rigidity evidence", 120, rigidity},
      {10, "source sequences on 200 random fences", 0, source_sequences},
      {11, "augmentation residual checks", 0, augvar_checks},
  };
  std::vector<std::string> lines(12);
  int failures = 0;
  for (auto& c : criteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.seconds_limit > 0 && secs > c.seconds_limit) {
      std::ostringstream msg;
      msg << "took " << secs << " s, limit " << c.seconds_limit << " s";
      o.require(false, msg.str());
    }
    failures += !o.pass;
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.number << "  " << c.title << "  ("
         << std::fixed << std::setprecision(2) << secs << " s)  " << o.summary();
    lines[c.number] = line.str();
  }
  for (int i = 1; i <= 11; ++i) std::cout << lines[i] << "\n";
  std::cout << (failures ? "ACCEPTANCE FAILED: " + std::to_string(failures) + " criteria" : std::string("ACCEPTANCE PASSED"))
            << std::endl;
  return failures ? 1 : 0;
}
