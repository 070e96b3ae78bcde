#include "qpseed/seed_walker.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace qpseed {

IntMatrix b_matrix(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  IntMatrix B(n, std::vector<long>(n, 0));
  for (const auto& [id, a] : q.arrows()) {
    ++B[a.tail][a.head];
    --B[a.head][a.tail];
  }
  return B;
}

FramedSeed framed_seed(const Quiver& q) {
  FramedSeed s{b_matrix(q), {}};
  const std::size_t n = s.B.size();
  s.C.assign(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) s.C[i][i] = 1;
  return s;
}

FramedSeed fz_mutate(const FramedSeed& s, std::size_t k) {
  const std::size_t n = s.B.size();
  if (k >= n) throw AlgebraError("mutation index out of range");
  IntMatrix m = s.B;
  m.insert(m.end(), s.C.begin(), s.C.end());
  IntMatrix out = m;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == k || j == k) {
        out[i][j] = -m[i][j];
      } else {
        long a = m[i][k], b = m[k][j];
        out[i][j] = m[i][j] + (std::abs(a) * b + a * std::abs(b)) / 2;
      }
    }
  FramedSeed r;
  r.B.assign(out.begin(), out.begin() + static_cast<long>(n));
  r.C.assign(out.begin() + static_cast<long>(n), out.end());
  return r;
}

bool sign_coherent(const IntMatrix& C) {
  if (C.empty()) return true;
  for (std::size_t j = 0; j < C[0].size(); ++j) {
    bool pos = false, neg = false;
    for (const auto& row : C) {
      pos |= row[j] > 0;
      neg |= row[j] < 0;
    }
    if (pos && neg) return false;
  }
  return true;
}

namespace {

std::string serialize(const FramedSeed& s, const std::vector<std::size_t>& p) {
  std::ostringstream os;
  const std::size_t n = p.size();
  os << n << "|C";
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j) os << ' ' << s.C[r][p[j]];
  os << "|B";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) os << ' ' << s.B[p[i]][p[j]];
  return os.str();
}

// Lexicographic comparison of the permuted (C, B) data, C row-major first.
bool less_under(const FramedSeed& s, const std::vector<std::size_t>& p, const std::vector<std::size_t>& q) {
  const std::size_t n = p.size();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j)
      if (s.C[r][p[j]] != s.C[r][q[j]]) return s.C[r][p[j]] < s.C[r][q[j]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (s.B[p[i]][p[j]] != s.B[q[i]][q[j]]) return s.B[p[i]][p[j]] < s.B[q[i]][q[j]];
  return false;
}

}  // namespace

SeedKey canonical_key(const FramedSeed& s) {
  const std::size_t n = s.B.size();
  auto column = [&](std::size_t j) {
    std::vector<long> c;
    for (const auto& row : s.C) c.push_back(row[j]);
    return c;
  };
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::stable_sort(p.begin(), p.end(), [&](std::size_t x, std::size_t y) { return column(x) < column(y); });
  std::vector<std::pair<std::size_t, std::size_t>> ties;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && column(p[j]) == column(p[i])) ++j;
    if (j - i > 1) ties.emplace_back(i, j);
    i = j;
  }
  std::vector<std::size_t> best = p;
  if (!ties.empty()) {
    std::function<void(std::size_t)> rec = [&](std::size_t g) {
      if (g == ties.size()) {
        if (less_under(s, p, best)) best = p;
        return;
      }
      auto [i, j] = ties[g];
      std::sort(p.begin() + static_cast<long>(i), p.begin() + static_cast<long>(j));
      do {
        rec(g + 1);
      } while (std::next_permutation(p.begin() + static_cast<long>(i), p.begin() + static_cast<long>(j)));
    };
    rec(0);
  }
  return SeedKey{serialize(s, best), best};
}

std::string to_string(GraphStatus s) {
  switch (s) {
    case GraphStatus::Complete: return "COMPLETE";
    case GraphStatus::DepthBounded: return "DEPTH_BOUNDED";
    case GraphStatus::Budget: return "BUDGET";
  }
  return "?";
}

namespace {

std::string word_text(const Quiver& q, const std::vector<VertexId>& w) {
  std::string s;
  for (VertexId v : w) s += (s.empty() ? "" : ",") + q.vertex_name(v);
  return s.empty() ? "()" : s;
}

// Copy of `qp` with vertex x renamed to position map[x] of `names`.
QP relabel(const QP& qp, const std::vector<std::string>& names, const std::vector<VertexId>& map) {
  QP out;
  for (const auto& n : names) out.quiver.add_vertex(n);
  for (const auto& [id, a] : qp.quiver.arrows()) out.quiver.insert_arrow(Arrow{id, map[a.tail], map[a.head], a.name});
  out.potential = qp.potential;
  return out;
}

CertificateStep step_record(VertexId v, const MutationLog& log, const QP& after) {
  CertificateStep st;
  st.vertex = v;
  for (const auto& r : log.reductions) st.reductions.emplace_back(r.a_name, r.b_name);
  st.qp_hash = qp_hash(after);
  return st;
}

}  // namespace

ExchangeGraph explore(const QP& qp, const ExploreOptions& opts) {
  ExchangeGraph g;
  g.depth_bound = opts.exhaustive ? -1 : opts.max_depth;
  QP root = split_reduced(qp, opts.reduction).reduced;
  if (auto tc = find_two_cycle(root.quiver))
    throw CertificateFailure("root QP has a 2-cycle (" + root.quiver.arrow(tc->first).name + ", " +
                             root.quiver.arrow(tc->second).name + ")");
  const std::size_t n = root.quiver.vertex_count();
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<std::size_t>> perm;  // canonical permutation per node

  auto add_node = [&](ExplorationNode node, std::vector<std::size_t> p) {
    index.emplace(node.key, g.nodes.size());
    perm.push_back(std::move(p));
    g.nodes.push_back(std::move(node));
    return g.nodes.size() - 1;
  };
  auto inverse = [](const std::vector<std::size_t>& p) {
    std::vector<std::size_t> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
    return inv;
  };

  {
    FramedSeed s = framed_seed(root.quiver);
    SeedKey k = canonical_key(s);
    add_node(ExplorationNode{k.key, {}, root, s, {}}, k.perm);
  }
  std::deque<std::size_t> queue{0};
  bool depth_cut = false;
  bool budget_hit = false;
  while (!queue.empty() && !budget_hit) {
    const std::size_t u = queue.front();
    queue.pop_front();
    const bool at_limit = !opts.exhaustive && static_cast<int>(g.nodes[u].word.size()) >= opts.max_depth;
    ++g.expansions;
    for (VertexId v = 0; v < n; ++v) {
      FramedSeed ns = fz_mutate(g.nodes[u].seed, v);
      SeedKey k = canonical_key(ns);
      auto it = index.find(k.key);
      if (at_limit) {
        if (it == index.end()) {
          depth_cut = true;
        } else {
          const auto inv = inverse(k.perm);
          g.edges.push_back({u, v, it->second, static_cast<VertexId>(perm[it->second][inv[v]])});
        }
        continue;
      }
      const ExplorationNode& cur = g.nodes[u];
      std::vector<VertexId> word = cur.word;
      word.push_back(v);
      auto [mq, log] = mutate(cur.qp, v, opts.reduction);
      if (auto tc = find_two_cycle(mq.quiver))
        throw CertificateFailure("2-cycle (" + mq.quiver.arrow(tc->first).name + ", " + mq.quiver.arrow(tc->second).name +
                                 ") after mutation word " + word_text(mq.quiver, word));
      if (b_matrix(mq.quiver) != ns.B)
        throw MismatchError("QP mutation and matrix mutation disagree after " + word_text(mq.quiver, word));
      if (!sign_coherent(ns.C))
        throw SignCoherenceError("C-matrix is not sign-coherent after " + word_text(mq.quiver, word));
      if (it == index.end()) {
        if (g.nodes.size() >= opts.max_nodes) {
          budget_hit = true;
          break;
        }
        std::vector<CertificateStep> cert = cur.certificate;
        cert.push_back(step_record(v, log, mq));
        std::size_t w = add_node(ExplorationNode{k.key, word, std::move(mq), ns, std::move(cert)}, k.perm);
        g.edges.push_back({u, v, w, v});
        queue.push_back(w);
      } else {
        const std::size_t w = it->second;
        const auto inv = inverse(k.perm);
        g.edges.push_back({u, v, w, static_cast<VertexId>(perm[w][inv[v]])});
        std::vector<VertexId> map(n);
        for (std::size_t x = 0; x < n; ++x) map[x] = static_cast<VertexId>(perm[w][inv[x]]);
        if (!equivalent_up_to_rescaling(relabel(mq, g.nodes[w].qp.quiver.vertex_names(), map), g.nodes[w].qp))
          ++g.possible_false_negatives;
      }
    }
  }
  if (budget_hit)
    g.status = GraphStatus::Budget;
  else if (depth_cut)
    g.status = GraphStatus::DepthBounded;
  else
    g.status = GraphStatus::Complete;
  return g;
}

CertificateLog filling_certificate(const QP& qp, const std::vector<VertexId>& word, const ReductionOptions& opts) {
  if (word.empty()) throw AlgebraError("filling certificate needs a nonempty mutation word");
  CertificateLog out;
  QP cur = qp;
  for (std::size_t i = 0; i < word.size(); ++i) {
    VertexId v = word[i];
    if (v >= cur.quiver.vertex_count()) throw AlgebraError("no vertex with index " + std::to_string(v));
    if (auto tc = find_two_cycle(cur.quiver))
      throw CertificateFailure("step " + std::to_string(i + 1) + ": 2-cycle (" + cur.quiver.arrow(tc->first).name +
                               ", " + cur.quiver.arrow(tc->second).name + ") before mutating at " +
                               cur.quiver.vertex_name(v));
    auto [next, log] = mutate(cur, v, opts);
    if (auto tc = find_two_cycle(next.quiver))
      throw CertificateFailure("step " + std::to_string(i + 1) + ": 2-cycle (" + next.quiver.arrow(tc->first).name +
                               ", " + next.quiver.arrow(tc->second).name + ") in the reduced QP");
    out.steps.push_back(step_record(v, log, next));
    cur = std::move(next);
  }
  out.result = std::move(cur);
  return out;
}

}  // namespace qpseed
