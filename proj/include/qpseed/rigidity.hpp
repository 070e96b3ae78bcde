#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qpseed/fence.hpp"
#include "qpseed/quiver.hpp"

namespace qpseed {

struct TraceWitness {
  std::size_t degree = 0;
  Word word;
};

/// Graded dimensions of the truncated trace space, filtered by word length.
/// A report of zeros supports rigidity up to `truncation`; it proves nothing
/// beyond it.
struct TraceReport {
  int truncation = 0;
  std::vector<std::size_t> dims;  // dims[d - 1] for d = 1..truncation
  std::vector<TraceWitness> witnesses;
  std::size_t words = 0;
  std::size_t relations = 0;

  bool all_zero() const;
  std::size_t dim(int d) const { return dims.at(static_cast<std::size_t>(d - 1)); }
};

/// Throws AlgebraError for N < 1.
TraceReport trace_space_dims(const QP& qp, int N);

/// Canonical cyclic words of length <= N, sorted by (length, word).
std::vector<Word> cyclic_words(const Quiver& q, int N);

enum class EdgeVerdict { NoFace, SourceAdded, SinkAdded, SourcedVia, Fail };

std::string to_string(EdgeVerdict v);

struct EdgeCertificate {
  std::size_t edge = 0;
  std::optional<std::string> face;
  EdgeVerdict verdict = EdgeVerdict::NoFace;
  std::vector<std::string> sequence;
  std::string detail;
};

struct RigidityCertificate {
  std::vector<EdgeCertificate> edges;
  bool pass = true;
  std::optional<std::size_t> failed_edge;
  std::optional<QP> failed_state;
};

RigidityCertificate rigidity_certificate(const PlabicFence& f);

}  // namespace qpseed
