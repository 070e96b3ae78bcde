#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qpseed/qp_mutation.hpp"
#include "qpseed/quiver.hpp"

namespace qpseed {

using IntMatrix = std::vector<std::vector<long>>;

/// b_ij = #(i -> j) - #(j -> i).
IntMatrix b_matrix(const Quiver& q);

struct FramedSeed {
  IntMatrix B;
  IntMatrix C;

  friend bool operator==(const FramedSeed&, const FramedSeed&) = default;
};

/// (B, identity).
FramedSeed framed_seed(const Quiver& q);

/// Matrix mutation of the stacked matrix [B; C] at column k.
FramedSeed fz_mutate(const FramedSeed& s, std::size_t k);

bool sign_coherent(const IntMatrix& C);

struct SeedKey {
  std::string key;
  /// perm[i] is the vertex placed at position i of the representative.
  std::vector<std::size_t> perm;
};

/// Minimal representative of (B, C) under simultaneous relabeling, comparing
/// C first. Exact: columns of C are sorted, ties searched exhaustively.
SeedKey canonical_key(const FramedSeed& s);

class CertificateFailure : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class MismatchError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class SignCoherenceError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

struct CertificateStep {
  VertexId vertex = 0;
  bool two_acyclic_before = true;
  std::vector<std::pair<std::string, std::string>> reductions;  // removed arrow pairs
  std::uint64_t qp_hash = 0;
};

struct ExplorationNode {
  std::string key;
  std::vector<VertexId> word;
  QP qp;
  FramedSeed seed;
  std::vector<CertificateStep> certificate;
};

struct ExchangeEdge {
  std::size_t from = 0;
  VertexId vertex = 0;     // in the labeling of `from`
  std::size_t to = 0;
  VertexId to_vertex = 0;  // the same mutation seen from `to`
};

enum class GraphStatus { Complete, DepthBounded, Budget };

std::string to_string(GraphStatus s);

struct ExchangeGraph {
  std::vector<ExplorationNode> nodes;
  std::vector<ExchangeEdge> edges;
  GraphStatus status = GraphStatus::Complete;
  int depth_bound = -1;
  /// Revisits whose QPs did not match up to relabeling and rescaling.
  std::size_t possible_false_negatives = 0;
  std::size_t expansions = 0;
};

struct ExploreOptions {
  bool exhaustive = false;
  int max_depth = 4;
  std::size_t max_nodes = 10000;
  ReductionOptions reduction;
};

/// Breadth-first enumeration of the exchange graph from the reduced part of
/// `qp`, mutating the QP alongside the framed seed. Throws
/// CertificateFailure, MismatchError or SignCoherenceError.
ExchangeGraph explore(const QP& qp, const ExploreOptions& opts);

struct CertificateLog {
  std::vector<CertificateStep> steps;
  QP result;
};

/// Replays `word`, checking 2-acyclicity around each step. Throws
/// AlgebraError for an empty word and CertificateFailure on a 2-cycle.
CertificateLog filling_certificate(const QP& qp, const std::vector<VertexId>& word,
                                   const ReductionOptions& opts = {});

}  // namespace qpseed
