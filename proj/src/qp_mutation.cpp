#include "qpseed/qp_mutation.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

namespace qpseed {

namespace {

std::string pick_name(const Quiver& q, const std::string& want) {
  if (want.empty() || want.size() > 24 || q.find_arrow(want)) return {};
  return want;
}

std::string reversed_name(const std::string& name) {
  if (!name.empty() && name.back() == '*') return name.substr(0, name.size() - 1);
  return name + "*";
}

Quiver vertices_only(const Quiver& q) {
  Quiver out;
  for (const auto& v : q.vertex_names()) out.add_vertex(v);
  out.reserve_ids(q.next_arrow_id());
  return out;
}

// Word rotated to start right after position i, with w[i] dropped.
Word rest_after(const Word& w, std::size_t i) {
  Word r;
  r.reserve(w.size() - 1);
  for (std::size_t k = 1; k < w.size(); ++k) r.push_back(w[(i + k) % w.size()]);
  return r;
}

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

std::pair<QP, MutationLog> premutate(const QP& qp, VertexId v) {
  const Quiver& q = qp.quiver;
  if (v >= q.vertex_count()) throw AlgebraError("no vertex with index " + std::to_string(v));
  std::vector<ArrowId> ins = q.arrows_into(v);
  std::vector<ArrowId> outs = q.arrows_out_of(v);
  for (ArrowId a : ins)
    for (ArrowId b : outs)
      if (q.arrow(a).tail == q.arrow(b).head)
        throw MutationError("vertex " + q.vertex_name(v) + " lies on a 2-cycle (" + q.arrow(a).name + ", " +
                            q.arrow(b).name + ")");

  QP out{q, {}};
  MutationLog log;
  log.vertex = v;
  std::map<std::pair<ArrowId, ArrowId>, ArrowId> composite;
  for (ArrowId a : ins)
    for (ArrowId b : outs) {
      const Arrow& A = q.arrow(a);
      const Arrow& B = q.arrow(b);
      ArrowId id = out.quiver.add_arrow(A.tail, B.head, pick_name(out.quiver, "[" + A.name + B.name + "]"));
      composite[{a, b}] = id;
      log.composites.push_back({id, a, b});
    }
  std::map<ArrowId, ArrowId> star;
  auto reverse = [&](ArrowId a) {
    Arrow A = q.arrow(a);
    out.quiver.remove_arrow(a);
    ArrowId id = out.quiver.add_arrow(A.head, A.tail, pick_name(out.quiver, reversed_name(A.name)));
    star[a] = id;
    log.reversed.push_back({a, id});
  };
  for (ArrowId a : ins) reverse(a);
  for (ArrowId b : outs) reverse(b);

  for (const auto& [w, c] : qp.potential.terms()) {
    const std::size_t n = w.size();
    std::size_t s = 0;
    while (s < n && q.arrow(w[s]).tail == v) ++s;
    Word img;
    for (std::size_t k = 0; k < n; ++k) {
      ArrowId x = w[(s + k) % n];
      if (q.arrow(x).head == v) {
        ArrowId y = w[(s + k + 1) % n];
        img.push_back(composite.at({x, y}));
        ++k;
      } else {
        img.push_back(x);
      }
    }
    out.potential.add(img, c);
  }
  for (const auto& c : log.composites) out.potential.add(Word{c.id, star.at(c.out), star.at(c.in)}, Rational(1));
  for (const auto& [id, a] : q.arrows()) log.names[id] = a.name;
  for (const auto& [id, a] : out.quiver.arrows()) log.names[id] = a.name;
  log.result_hash = qp_hash(out);
  return {std::move(out), std::move(log)};
}

std::variant<ReducedPair, NoReduction> local_reduce(const QP& qp, ArrowId a, ArrowId b,
                                                    const ReductionOptions& opts) {
  const Quiver& q = qp.quiver;
  const Arrow& A = q.arrow(a);
  const Arrow& B = q.arrow(b);
  if (A.head != B.tail || B.head != A.tail) throw AlgebraError(A.name + " and " + B.name + " do not form a 2-cycle");
  const Word ab{a, b};
  const Word key = canonical_rotation(ab);
  LocalReduction rec{a, b, A.name, B.name, qp.potential.coefficient(ab), {}};
  if (rec.coefficient == 0) throw AlgebraError("the 2-cycle " + A.name + B.name + " does not occur in W");
  const std::size_t cap = opts.degree_cap.value_or(2 * std::max<std::size_t>(qp.potential.max_degree(), 2) + 4);

  Potential W = qp.potential;
  auto normalize = [&] {
    Rational k = W.coefficient(ab);
    if (k == 0) return false;
    if (k != 1) {
      SubstitutionRules r;
      r[b] = PathPoly{{Word{b}, Rational(1) / k}};
      W = substitute(q, W, r);
    }
    return true;
  };
  normalize();

  for (std::size_t pass = 0;; ++pass) {
    PathPoly U, V;
    bool mixed = false;
    for (const auto& [w, k] : W.terms()) {
      if (w == key) continue;
      auto ia = std::find(w.begin(), w.end(), a);
      auto ib = std::find(w.begin(), w.end(), b);
      if (ia == w.end() && ib == w.end()) continue;
      mixed = true;
      if (w.size() > cap)
        return NoReduction{"mixed term of degree " + std::to_string(w.size()) + " exceeds the cap " +
                           std::to_string(cap)};
      if (ia != w.end()) {
        add_term(V, rest_after(w, static_cast<std::size_t>(ia - w.begin())), -k);
      } else {
        add_term(U, rest_after(w, static_cast<std::size_t>(ib - w.begin())), -k);
      }
    }
    if (!mixed) break;
    if (pass >= opts.max_passes) return NoReduction{"no fixpoint after " + std::to_string(pass) + " passes"};
    SubstitutionRules rules;
    if (!U.empty()) rules[a] = add(PathPoly{{Word{a}, Rational(1)}}, U);
    if (!V.empty()) rules[b] = add(PathPoly{{Word{b}, Rational(1)}}, V);
    W = substitute(q, W, rules);
    rec.passes.push_back({std::move(U), std::move(V)});
    if (!normalize()) return NoReduction{"the coefficient of " + A.name + B.name + " vanished"};
  }

  ReducedPair res{{q, {}}, std::move(rec)};
  res.qp.quiver.remove_arrow(a);
  res.qp.quiver.remove_arrow(b);
  for (const auto& [w, k] : W.terms())
    if (w != key) res.qp.potential.add(w, k);
  return res;
}

Splitting split_reduced(const QP& qp, const ReductionOptions& opts) {
  Splitting s{{vertices_only(qp.quiver), {}}, qp, {}};
  for (;;) {
    const Word* quad = nullptr;
    for (const auto& [w, c] : s.reduced.potential.terms())
      if (w.size() == 2) {
        quad = &w;
        break;
      }
    if (!quad) break;
    const ArrowId a = (*quad)[0];
    const ArrowId b = (*quad)[1];
    Arrow A = s.reduced.quiver.arrow(a);
    Arrow B = s.reduced.quiver.arrow(b);
    auto r = local_reduce(s.reduced, a, b, opts);
    if (auto* fail = std::get_if<NoReduction>(&r))
      throw ReductionError("cannot reduce " + A.name + B.name + ": " + fail->reason);
    auto& done = std::get<ReducedPair>(r);
    s.trivial.quiver.insert_arrow(A);
    s.trivial.quiver.insert_arrow(B);
    s.trivial.potential.add(Word{a, b}, Rational(1));
    s.reductions.push_back(std::move(done.record));
    s.reduced = std::move(done.qp);
  }
  s.trivial.quiver.reserve_ids(s.reduced.quiver.next_arrow_id());
  return s;
}

std::pair<QP, MutationLog> mutate(const QP& qp, VertexId v, const ReductionOptions& opts) {
  auto [pre, log] = premutate(qp, v);
  Splitting s = split_reduced(pre, opts);
  log.reductions = std::move(s.reductions);
  log.result_hash = qp_hash(s.reduced);
  return {std::move(s.reduced), std::move(log)};
}

std::pair<QP, std::vector<MutationLog>> mutate_sequence(const QP& qp, const std::vector<VertexId>& seq,
                                                        const ReductionOptions& opts) {
  QP cur = qp;
  std::vector<MutationLog> logs;
  for (VertexId v : seq) {
    auto [next, log] = mutate(cur, v, opts);
    cur = std::move(next);
    logs.push_back(std::move(log));
  }
  return {std::move(cur), std::move(logs)};
}

std::optional<std::pair<ArrowId, ArrowId>> find_two_cycle(const Quiver& q) {
  std::map<std::pair<VertexId, VertexId>, ArrowId> first;
  for (const auto& [id, a] : q.arrows()) first.try_emplace({a.tail, a.head}, id);
  for (const auto& [id, a] : q.arrows()) {
    auto it = first.find({a.head, a.tail});
    if (it != first.end()) return std::make_pair(id, it->second);
  }
  return std::nullopt;
}

bool two_acyclic(const Quiver& q) { return !find_two_cycle(q).has_value(); }

std::vector<Word> empty_cycles(const QP& qp, int maxlen) {
  if (maxlen < 2) throw AlgebraError("maxlen must be at least 2");
  const Quiver& q = qp.quiver;
  std::set<Word> found;
  std::vector<bool> used(q.vertex_count(), false);
  Word path;
  std::function<void(VertexId, VertexId)> dfs = [&](VertexId start, VertexId at) {
    for (ArrowId id : q.arrows_out_of(at)) {
      VertexId h = q.arrow(id).head;
      if (h < start) continue;
      path.push_back(id);
      if (h == start) {
        Word c = canonical_rotation(path);
        if (qp.potential.coefficient(c) == 0) found.insert(c);
      } else if (!used[h] && static_cast<int>(path.size()) < maxlen) {
        used[h] = true;
        dfs(start, h);
        used[h] = false;
      }
      path.pop_back();
    }
  };
  for (VertexId s = 0; s < q.vertex_count(); ++s) {
    used[s] = true;
    dfs(s, s);
    used[s] = false;
  }
  return {found.begin(), found.end()};
}

bool is_source(const Quiver& q, VertexId v) { return q.arrows_into(v).empty(); }
bool is_sink(const Quiver& q, VertexId v) { return q.arrows_out_of(v).empty(); }

std::uint64_t qp_hash(const QP& qp) {
  std::ostringstream os;
  for (const auto& v : qp.quiver.vertex_names()) os << v << '\n';
  for (const auto& [id, a] : qp.quiver.arrows()) os << id << ' ' << a.tail << ' ' << a.head << ' ' << a.name << '\n';
  for (const auto& [w, c] : qp.potential.terms()) {
    os << c.get_str() << ':';
    for (ArrowId x : w) os << ' ' << x;
    os << '\n';
  }
  return fnv1a(os.str());
}

bool replay(const QP& input, const MutationLog& log, const ReductionOptions& opts) {
  auto [out, again] = mutate(input, log.vertex, opts);
  return again.result_hash == log.result_hash && qp_hash(out) == log.result_hash;
}

namespace {

std::string serialize_under(const QP& qp, const std::vector<ArrowId>& order) {
  std::map<ArrowId, ArrowId> label;
  for (std::size_t i = 0; i < order.size(); ++i) label[order[i]] = static_cast<ArrowId>(i);
  std::vector<std::pair<Word, std::string>> terms;
  for (const auto& [w, c] : qp.potential.terms()) {
    Word m;
    for (ArrowId x : w) m.push_back(label.at(x));
    terms.emplace_back(canonical_rotation(m), c.get_str());
  }
  std::sort(terms.begin(), terms.end());
  std::ostringstream os;
  for (const auto& [w, c] : terms) {
    os << c << ':';
    for (ArrowId x : w) os << x << ',';
    os << ';';
  }
  return os.str();
}

std::string arrow_signature(const QP& qp, ArrowId id) {
  std::vector<std::string> sig;
  for (const auto& [w, c] : qp.potential.terms()) {
    auto n = std::count(w.begin(), w.end(), id);
    if (n) sig.push_back(std::to_string(w.size()) + "/" + std::to_string(n) + "/" + c.get_str());
  }
  std::sort(sig.begin(), sig.end());
  std::string s;
  for (const auto& x : sig) s += x + "|";
  return s;
}

}  // namespace

std::string canonical_form(const QP& qp) {
  const Quiver& q = qp.quiver;
  std::vector<ArrowId> order;
  std::map<ArrowId, std::string> sig;
  for (const auto& [id, a] : q.arrows()) {
    order.push_back(id);
    sig[id] = arrow_signature(qp, id);
  }
  auto endpoints = [&](ArrowId x) { return std::make_pair(q.arrow(x).tail, q.arrow(x).head); };
  std::sort(order.begin(), order.end(), [&](ArrowId x, ArrowId y) {
    if (endpoints(x) != endpoints(y)) return endpoints(x) < endpoints(y);
    if (sig[x] != sig[y]) return sig[x] < sig[y];
    return x < y;
  });
  // Groups of arrows that neither endpoints nor signatures distinguish.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t combos = 1;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && endpoints(order[j]) == endpoints(order[i]) && sig[order[j]] == sig[order[i]]) ++j;
    if (j - i > 1) {
      groups.emplace_back(i, j);
      for (std::size_t k = 2; k <= j - i && combos <= 5040; ++k) combos *= k;
    }
    i = j;
  }

  std::ostringstream head;
  head << q.vertex_count() << '|';
  for (const auto& v : q.vertex_names()) head << v << ',';
  head << '|';
  for (ArrowId x : order) head << q.arrow(x).tail << '>' << q.arrow(x).head << ',';
  head << '|';

  std::string best = serialize_under(qp, order);
  if (!groups.empty() && combos <= 5040) {
    for (auto& [i, j] : groups) std::sort(order.begin() + i, order.begin() + j);
    std::function<void(std::size_t)> rec = [&](std::size_t g) {
      if (g == groups.size()) {
        best = std::min(best, serialize_under(qp, order));
        return;
      }
      auto [i, j] = groups[g];
      do {
        rec(g + 1);
      } while (std::next_permutation(order.begin() + i, order.begin() + j));
    };
    rec(0);
  }
  return head.str() + best;
}

namespace {

// Z-basis of {u : u^T E = 0} by unimodular row reduction of [E | I].
std::vector<std::vector<mpz_class>> left_kernel(const std::vector<std::vector<mpz_class>>& E, std::size_t cols) {
  const std::size_t m = E.size();
  std::vector<std::vector<mpz_class>> M(m, std::vector<mpz_class>(cols + m, 0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < cols; ++c) M[r][c] = E[r][c];
    M[r][cols + r] = 1;
  }
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m; ++c) {
    for (;;) {
      std::size_t piv = m;
      for (std::size_t r = row; r < m; ++r)
        if (M[r][c] != 0 && (piv == m || abs(M[r][c]) < abs(M[piv][c]))) piv = r;
      if (piv == m) break;
      std::swap(M[row], M[piv]);
      bool clean = true;
      for (std::size_t r = row + 1; r < m; ++r) {
        if (M[r][c] == 0) continue;
        mpz_class f = M[r][c] / M[row][c];
        for (std::size_t k = 0; k < cols + m; ++k) M[r][k] -= f * M[row][k];
        if (M[r][c] != 0) clean = false;
      }
      if (clean) {
        ++row;
        break;
      }
    }
  }
  std::vector<std::vector<mpz_class>> ker;
  for (std::size_t r = row; r < m; ++r) ker.emplace_back(M[r].begin() + cols, M[r].end());
  return ker;
}

Rational power(const Rational& x, const mpz_class& e) {
  mpz_class n = x.get_num(), d = x.get_den();
  unsigned long k = mpz_class(abs(e)).get_ui();
  mpz_class pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), n.get_mpz_t(), k);
  mpz_pow_ui(pd.get_mpz_t(), d.get_mpz_t(), k);
  Rational r = e >= 0 ? Rational(pn, pd) : Rational(pd, pn);
  r.canonicalize();
  return r;
}

bool rescaling_exists(const QP& x, const QP& y, const std::map<ArrowId, ArrowId>& to_y) {
  std::vector<Word> words;
  std::vector<Rational> ratio;
  for (const auto& [w, c] : x.potential.terms()) {
    Word m;
    for (ArrowId a : w) m.push_back(to_y.at(a));
    Rational cy = y.potential.coefficient(m);
    if (cy == 0) return false;
    words.push_back(m);
    ratio.push_back(cy / c);
  }
  std::map<ArrowId, std::size_t> col;
  for (const auto& [id, a] : y.quiver.arrows()) col.emplace(id, col.size());
  std::vector<std::vector<mpz_class>> E(words.size(), std::vector<mpz_class>(col.size(), 0));
  for (std::size_t t = 0; t < words.size(); ++t)
    for (ArrowId a : words[t]) E[t][col.at(a)] += 1;
  for (const auto& u : left_kernel(E, col.size())) {
    Rational p = 1;
    for (std::size_t t = 0; t < u.size(); ++t)
      if (u[t] != 0) p *= power(ratio[t], u[t]);
    if (p != 1) return false;
  }
  return true;
}

}  // namespace

bool equivalent_up_to_rescaling(const QP& x, const QP& y) {
  if (x.quiver.vertex_names() != y.quiver.vertex_names()) return false;
  if (x.quiver.arrows().size() != y.quiver.arrows().size()) return false;
  if (x.potential.size() != y.potential.size()) return false;
  std::map<std::pair<VertexId, VertexId>, std::vector<ArrowId>> gx, gy;
  for (const auto& [id, a] : x.quiver.arrows()) gx[{a.tail, a.head}].push_back(id);
  for (const auto& [id, a] : y.quiver.arrows()) gy[{a.tail, a.head}].push_back(id);
  if (gx.size() != gy.size()) return false;
  std::vector<std::pair<std::vector<ArrowId>, std::vector<ArrowId>>> classes;
  for (const auto& [k, v] : gx) {
    auto it = gy.find(k);
    if (it == gy.end() || it->second.size() != v.size()) return false;
    classes.emplace_back(v, it->second);
  }
  std::map<ArrowId, ArrowId> to_y;
  std::size_t attempts = 0;
  std::function<bool(std::size_t)> rec = [&](std::size_t g) -> bool {
    if (g == classes.size()) {
      ++attempts;
      return rescaling_exists(x, y, to_y);
    }
    auto& [xs, ys] = classes[g];
    std::vector<ArrowId> perm = ys;
    std::sort(perm.begin(), perm.end());
    do {
      for (std::size_t i = 0; i < xs.size(); ++i) to_y[xs[i]] = perm[i];
      if (rec(g + 1)) return true;
      if (attempts > 200000) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };
  return rec(0);
}

std::string to_string(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::Pass: return "PASS";
    case ProbeStatus::Counterexample: return "COUNTEREXAMPLE";
    case ProbeStatus::BudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

ProbeVerdict probe_nondegeneracy(const QP& qp, int depth, std::size_t budget, const ReductionOptions& opts) {
  ProbeVerdict verdict;
  QP root = split_reduced(qp, opts).reduced;
  if (!two_acyclic(root.quiver)) {
    verdict.status = ProbeStatus::Counterexample;
    verdict.nodes = 1;
    return verdict;
  }
  struct Item {
    QP qp;
    std::vector<VertexId> word;
  };
  std::unordered_set<std::string> seen{canonical_form(root)};
  std::deque<Item> queue;
  queue.push_back({std::move(root), {}});
  const VertexId n = static_cast<VertexId>(qp.quiver.vertex_count());
  while (!queue.empty()) {
    Item cur = std::move(queue.front());
    queue.pop_front();
    if (static_cast<int>(cur.word.size()) >= depth) continue;
    for (VertexId v = 0; v < n; ++v) {
      if (!cur.word.empty() && cur.word.back() == v) continue;
      QP next = mutate(cur.qp, v, opts).first;
      std::vector<VertexId> word = cur.word;
      word.push_back(v);
      if (!two_acyclic(next.quiver)) {
        verdict.status = ProbeStatus::Counterexample;
        verdict.word = std::move(word);
        verdict.depth = static_cast<int>(verdict.word.size());
        verdict.nodes = seen.size();
        return verdict;
      }
      if (!seen.insert(canonical_form(next)).second) continue;
      if (seen.size() > budget) {
        verdict.status = ProbeStatus::BudgetExceeded;
        verdict.depth = static_cast<int>(word.size());
        verdict.nodes = seen.size();
        return verdict;
      }
      queue.push_back({std::move(next), std::move(word)});
    }
  }
  verdict.depth = depth;
  verdict.nodes = seen.size();
  return verdict;
}

}  // namespace qpseed
