#pragma once

// Independent reference computations used only by tests.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "qpseed/path_algebra.hpp"
#include "qpseed/quiver.hpp"

namespace oracle {

using qpseed::ArrowId;
using qpseed::Rational;
using qpseed::VertexId;
using qpseed::Word;

using Dense = std::vector<std::vector<Rational>>;

inline std::size_t rank(Dense m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

/// Graded trace-space dimensions computed on rooted closed paths, with
/// rotations imposed as explicit relations w - rot(w) and Jacobian relations
/// u * d_a W * v for all u, v closing the path.
inline std::vector<std::size_t> trace_dims(const qpseed::QP& qp, int N) {
  const qpseed::Quiver& q = qp.quiver;
  std::vector<Word> closed;
  Word path;
  std::function<void(VertexId)> walk = [&](VertexId start) {
    if (q.arrow(path.back()).head == start) closed.push_back(path);
    if (static_cast<int>(path.size()) == N) return;
    for (ArrowId a : q.arrows_out_of(q.arrow(path.back()).head)) {
      path.push_back(a);
      walk(start);
      path.pop_back();
    }
  };
  for (const auto& [id, a] : q.arrows()) {
    path = {id};
    walk(a.tail);
  }
  std::map<Word, std::size_t> col;
  for (const auto& w : closed) col.emplace(w, col.size());
  const std::size_t n = col.size();

  Dense rel;
  for (const auto& [w, i] : col) {
    Word r(w.begin() + 1, w.end());
    r.push_back(w.front());
    if (r == w) continue;
    std::vector<Rational> row(n, 0);
    row[i] += 1;
    row[col.at(r)] -= 1;
    rel.push_back(std::move(row));
  }
  // paths (possibly empty) between given vertices, bounded length
  auto paths_from = [&](VertexId from, std::size_t maxlen) {
    std::vector<Word> out{{}};
    std::vector<std::pair<Word, VertexId>> frontier{{{}, from}};
    for (std::size_t len = 1; len <= maxlen; ++len) {
      std::vector<std::pair<Word, VertexId>> next;
      for (const auto& [p, at] : frontier)
        for (ArrowId a : q.arrows_out_of(at)) {
          Word np = p;
          np.push_back(a);
          out.push_back(np);
          next.emplace_back(np, q.arrow(a).head);
        }
      frontier = std::move(next);
    }
    return out;
  };
  auto end_of = [&](const Word& p, VertexId start) { return p.empty() ? start : q.arrow(p.back()).head; };
  for (const auto& [a, arrow] : q.arrows()) {
    qpseed::PathPoly d = qpseed::cyclic_derivative(qp.potential, a);
    if (d.empty()) continue;
    // u ends at head(a) = start of every term of d; v starts at tail(a)
    for (const Word& v : paths_from(arrow.tail, static_cast<std::size_t>(N))) {
      VertexId x = end_of(v, arrow.tail);
      for (const Word& u : paths_from(x, static_cast<std::size_t>(N))) {
        if (end_of(u, x) != arrow.head) continue;
        if (u.size() + v.size() + 1 > static_cast<std::size_t>(N)) continue;
        std::vector<Rational> row(n, 0);
        bool any = false;
        for (const auto& [r, c] : d) {
          Word w = u;
          w.insert(w.end(), r.begin(), r.end());
          w.insert(w.end(), v.begin(), v.end());
          if (w.size() > static_cast<std::size_t>(N)) continue;
          row[col.at(w)] += c;
          any = true;
        }
        if (any) rel.push_back(std::move(row));
      }
    }
  }
  const std::size_t total = rank(rel);
  auto dim_filtered = [&](int d) {
    // dim of the image of words of length >= d in the quotient
    std::size_t ge = 0;
    std::vector<std::size_t> low_cols;
    for (const auto& [w, i] : col) {
      if (static_cast<int>(w.size()) >= d)
        ++ge;
      else
        low_cols.push_back(i);
    }
    Dense proj;
    for (const auto& row : rel) {
      std::vector<Rational> pr;
      for (std::size_t c : low_cols) pr.push_back(row[c]);
      proj.push_back(std::move(pr));
    }
    return ge - total + rank(proj);
  };
  std::vector<std::size_t> dims;
  for (int d = 1; d <= N; ++d) dims.push_back(dim_filtered(d) - dim_filtered(d + 1));
  return dims;
}

using IntMatrix = std::vector<std::vector<long>>;

/// Matrix mutation of an m x n extended exchange matrix at column k.
inline IntMatrix matrix_mutation(const IntMatrix& m, std::size_t k) {
  IntMatrix out = m;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (i == k || j == k) {
        out[i][j] = -m[i][j];
      } else {
        long a = m[i][k], b = m[k][j];
        if (a > 0 && b > 0) out[i][j] = m[i][j] + a * b;
        else if (a < 0 && b < 0) out[i][j] = m[i][j] - a * b;
      }
    }
  return out;
}

/// Number of seeds reachable from (B, I) counted up to simultaneous
/// relabeling, found by comparing every pair of reached framed matrices
/// under all vertex permutations.
inline std::size_t framed_orbit_count(const IntMatrix& B, std::size_t cap = 100000) {
  const std::size_t n = B.size();
  IntMatrix start = B;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long> row(n, 0);
    row[i] = 1;
    start.push_back(row);
  }
  std::set<IntMatrix> labeled{start};
  std::deque<IntMatrix> queue{start};
  while (!queue.empty() && labeled.size() < cap) {
    IntMatrix cur = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < n; ++k) {
      IntMatrix nx = matrix_mutation(cur, k);
      if (labeled.insert(nx).second) queue.push_back(nx);
    }
  }
  // orbits under simultaneous permutation: B rows+cols, C columns
  std::vector<std::size_t> perm(n);
  auto permuted = [&](const IntMatrix& m) {
    IntMatrix out(2 * n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        out[i][j] = m[perm[i]][perm[j]];
        out[n + i][j] = m[n + i][perm[j]];
      }
    return out;
  };
  std::set<IntMatrix> seen;
  std::size_t orbits = 0;
  for (const auto& m : labeled) {
    if (seen.count(m)) continue;
    ++orbits;
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    do {
      seen.insert(permuted(m));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return orbits;
}

}  // namespace oracle
