#pragma once

#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qpseed/fence.hpp"
#include "qpseed/path_algebra.hpp"
#include "qpseed/quiver.hpp"

namespace fixtures {

using namespace qpseed;

struct ArrowSpec {
  std::string name;
  std::string tail;
  std::string head;
};

struct TermSpec {
  std::string coef;
  std::vector<std::string> cycle;
};

inline Word word_of(const Quiver& q, const std::vector<std::string>& names) {
  Word w;
  for (const auto& n : names) w.push_back(*q.find_arrow(n));
  return w;
}

inline QP make_qp(const std::vector<std::string>& vertices, const std::vector<ArrowSpec>& arrows,
                  const std::vector<TermSpec>& terms = {}) {
  QP qp;
  for (const auto& v : vertices) qp.quiver.add_vertex(v);
  for (const auto& a : arrows) qp.quiver.add_arrow(*qp.quiver.find_vertex(a.tail), *qp.quiver.find_vertex(a.head), a.name);
  for (const auto& t : terms) qp.potential.add(cyc_normalize(qp.quiver, word_of(qp.quiver, t.cycle)), parse_rational(t.coef));
  return qp;
}

inline QP tri() { return make_qp({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}}, {{"1", {"a", "b", "c"}}}); }
inline QP empty_two_cycle() { return make_qp({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}}); }
inline QP empty_three_cycle() { return make_qp({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}}); }

inline PlabicFence fence(const std::string& braid, int strands) {
  return fence_from_braid(parse_braid(braid, strands));
}

inline QP a2() { return build_qp(fence("1 1 1", 2)); }
inline QP t33() { return build_qp(fence("1 2 1 2 1 2", 3)); }

inline VertexId vertex(const QP& qp, const std::string& name) { return *qp.quiver.find_vertex(name); }

/// Random positive braid with strands in [2, max_strands] and length in [0, max_len].
inline PlabicFence random_fence(std::mt19937_64& rng, int max_strands, int max_len, int min_len = 0) {
  int n = std::uniform_int_distribution<int>(2, max_strands)(rng);
  int len = std::uniform_int_distribution<int>(min_len, max_len)(rng);
  PlabicFence f{n, {}};
  for (int i = 0; i < len; ++i) f.levels.push_back(std::uniform_int_distribution<int>(1, n - 1)(rng));
  return f;
}

/// Random fence whose QP has at least one vertex.
inline PlabicFence random_fence_with_faces(std::mt19937_64& rng, int max_strands, int max_len) {
  for (;;) {
    PlabicFence f = random_fence(rng, max_strands, max_len, 2);
    if (!faces(f).empty()) return f;
  }
}

inline std::string describe(const PlabicFence& f) {
  std::ostringstream os;
  os << "n=" << f.strands << " [" << format_braid(braid_from_fence(f)) << "]";
  return os.str();
}

}  // namespace fixtures
