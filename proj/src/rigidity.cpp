#include "qpseed/rigidity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "qpseed/path_algebra.hpp"
#include "qpseed/qp_mutation.hpp"

namespace qpseed {

bool TraceReport::all_zero() const {
  return std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 0; });
}

std::vector<Word> cyclic_words(const Quiver& q, int N) {
  std::set<std::pair<std::size_t, Word>> found;
  Word path;
  std::function<void(VertexId)> walk = [&](VertexId start) {
    VertexId at = q.arrow(path.back()).head;
    if (at == start) found.emplace(path.size(), canonical_rotation(path));
    if (static_cast<int>(path.size()) >= N) return;
    for (ArrowId a : q.arrows_out_of(at)) {
      path.push_back(a);
      walk(start);
      path.pop_back();
    }
  };
  for (const auto& [id, a] : q.arrows()) {
    path = {id};
    walk(a.tail);
  }
  std::vector<Word> out;
  for (auto& [n, w] : found) out.push_back(w);
  return out;
}

namespace {

using SparseRow = std::map<std::size_t, Rational>;

// Echelon basis keyed by leading (smallest) column.
class Eliminator {
 public:
  void insert(SparseRow row) {
    while (!row.empty()) {
      auto lead = row.begin();
      auto it = pivots_.find(lead->first);
      if (it == pivots_.end()) {
        Rational inv = 1 / lead->second;
        for (auto& [c, v] : row) v *= inv;
        pivots_.emplace(lead->first, std::move(row));
        return;
      }
      Rational f = lead->second;
      for (const auto& [c, v] : it->second) {
        Rational& x = row[c];
        x -= f * v;
        if (x == 0) row.erase(c);
      }
    }
  }
  bool is_pivot(std::size_t c) const { return pivots_.count(c) != 0; }

 private:
  std::map<std::size_t, SparseRow> pivots_;
};

}  // namespace

TraceReport trace_space_dims(const QP& qp, int N) {
  if (N < 1) throw AlgebraError("truncation degree must be at least 1");
  const Quiver& q = qp.quiver;
  TraceReport rep;
  rep.truncation = N;
  std::vector<Word> words = cyclic_words(q, N);
  std::map<Word, std::size_t> column;
  for (std::size_t i = 0; i < words.size(); ++i) column.emplace(words[i], i);
  rep.words = words.size();

  Eliminator elim;
  for (const auto& [a, arrow] : q.arrows()) {
    PathPoly d = cyclic_derivative(qp.potential, a);
    if (d.empty()) continue;
    std::size_t low = d.begin()->first.size();
    for (const auto& [w, c] : d) low = std::min(low, w.size());
    // paths p parallel to a with |p| + low <= N
    Word p;
    std::function<void(VertexId)> grow = [&](VertexId at) {
      if (!p.empty() && at == arrow.head) {
        SparseRow row;
        for (const auto& [r, c] : d) {
          if (p.size() + r.size() > static_cast<std::size_t>(N)) continue;
          Word w = p;
          w.insert(w.end(), r.begin(), r.end());
          Rational& x = row[column.at(canonical_rotation(w))];
          x += c;
          if (x == 0) row.erase(column.at(canonical_rotation(w)));
        }
        ++rep.relations;
        elim.insert(std::move(row));
      }
      if (p.size() + low >= static_cast<std::size_t>(N)) return;
      for (ArrowId b : q.arrows_out_of(at)) {
        p.push_back(b);
        grow(q.arrow(b).head);
        p.pop_back();
      }
    };
    grow(arrow.tail);
  }

  rep.dims.assign(static_cast<std::size_t>(N), 0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (elim.is_pivot(i)) continue;
    ++rep.dims[words[i].size() - 1];
    rep.witnesses.push_back({words[i].size(), words[i]});
  }
  return rep;
}

std::string to_string(EdgeVerdict v) {
  switch (v) {
    case EdgeVerdict::NoFace: return "NO_FACE";
    case EdgeVerdict::SourceAdded: return "SOURCE_ADDED";
    case EdgeVerdict::SinkAdded: return "SINK_ADDED";
    case EdgeVerdict::SourcedVia: return "SOURCED_VIA";
    case EdgeVerdict::Fail: return "FAIL";
  }
  return "?";
}

RigidityCertificate rigidity_certificate(const PlabicFence& f) {
  RigidityCertificate cert;
  for (std::size_t e = 0; e < f.size(); ++e) {
    EdgeCertificate ec;
    ec.edge = e;
    auto face = face_with_right_edge(f, e);
    if (!face) {
      cert.edges.push_back(std::move(ec));
      continue;
    }
    ec.face = face->id;
    PlabicFence part = prefix(f, e + 1);
    QP qp = build_qp(part);
    VertexId fe = *qp.quiver.find_vertex(face->id);
    if (is_source(qp.quiver, fe)) {
      ec.verdict = EdgeVerdict::SourceAdded;
    } else if (is_sink(qp.quiver, fe)) {
      ec.verdict = EdgeVerdict::SinkAdded;
    } else {
      ec.sequence = source_sequence(part, e);
      std::vector<VertexId> seq;
      for (const auto& name : ec.sequence) seq.push_back(*qp.quiver.find_vertex(name));
      std::string problem;
      QP state = qp;
      try {
        if (std::find(ec.sequence.begin(), ec.sequence.end(), face->id) != ec.sequence.end())
          problem = "sequence contains the new face";
        else {
          state = mutate_sequence(qp, seq).first;
          if (!is_source(state.quiver, fe)) problem = "face is not a source after the sequence";
        }
      } catch (const AlgebraError& err) {
        problem = err.what();
      }
      if (problem.empty()) {
        ec.verdict = EdgeVerdict::SourcedVia;
      } else {
        ec.verdict = EdgeVerdict::Fail;
        ec.detail = problem;
        if (cert.pass) {
          cert.pass = false;
          cert.failed_edge = e;
          cert.failed_state = state;
        }
      }
    }
    cert.edges.push_back(std::move(ec));
  }
  return cert;
}

}  // namespace qpseed
