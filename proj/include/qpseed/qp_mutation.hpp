#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qpseed/path_algebra.hpp"
#include "qpseed/quiver.hpp"

namespace qpseed {

/// Mutation at a vertex lying on an oriented 2-cycle.
class MutationError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

/// A 2-cycle whose elimination did not stabilise.
class ReductionError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

struct CompositeArrow {
  ArrowId id = 0;
  ArrowId in = 0;   // arrow into the mutated vertex
  ArrowId out = 0;  // arrow out of it
};

struct ReversedArrow {
  ArrowId original = 0;
  ArrowId reversed = 0;
};

/// One elimination pass: a -> a + U, b -> b + V applied simultaneously.
struct ReductionPass {
  PathPoly U;
  PathPoly V;
};

struct LocalReduction {
  ArrowId a = 0;
  ArrowId b = 0;
  std::string a_name;
  std::string b_name;
  Rational coefficient;  // coefficient of ab before normalisation
  std::vector<ReductionPass> passes;
};

struct MutationLog {
  VertexId vertex = 0;
  std::vector<CompositeArrow> composites;
  std::vector<ReversedArrow> reversed;
  std::vector<LocalReduction> reductions;
  std::uint64_t result_hash = 0;
  std::map<ArrowId, std::string> names;  // every arrow of the input and premutated quivers
};

struct ReductionOptions {
  /// Largest degree a mixed term may reach; defaults to 2 * max cycle length + 4.
  std::optional<std::size_t> degree_cap;
  std::size_t max_passes = 64;
};

struct NoReduction {
  std::string reason;
};

struct ReducedPair {
  QP qp;
  LocalReduction record;
};

/// Non-reduced mutation. Throws MutationError if `v` lies on a 2-cycle.
std::pair<QP, MutationLog> premutate(const QP& qp, VertexId v);

/// Eliminates the 2-cycle ab (a then b). Throws AlgebraError if ab is not a
/// 2-cycle or does not occur in W.
std::variant<ReducedPair, NoReduction> local_reduce(const QP& qp, ArrowId a, ArrowId b,
                                                    const ReductionOptions& opts = {});

struct Splitting {
  QP trivial;
  QP reduced;
  std::vector<LocalReduction> reductions;
};

/// Throws ReductionError when some quadratic term cannot be reduced.
Splitting split_reduced(const QP& qp, const ReductionOptions& opts = {});

std::pair<QP, MutationLog> mutate(const QP& qp, VertexId v, const ReductionOptions& opts = {});

/// Applies the mutations in order; one log per step.
std::pair<QP, std::vector<MutationLog>> mutate_sequence(const QP& qp, const std::vector<VertexId>& seq,
                                                        const ReductionOptions& opts = {});

bool two_acyclic(const Quiver& q);
std::optional<std::pair<ArrowId, ArrowId>> find_two_cycle(const Quiver& q);

/// Simple cycles of length <= maxlen that do not occur in W, as canonical
/// words, ordered. Throws AlgebraError for maxlen < 2.
std::vector<Word> empty_cycles(const QP& qp, int maxlen);

bool is_source(const Quiver& q, VertexId v);
bool is_sink(const Quiver& q, VertexId v);

/// Hash of the exact representation (ids, names, coefficients).
std::uint64_t qp_hash(const QP& qp);

/// Re-runs the logged mutation and compares result hashes.
bool replay(const QP& input, const MutationLog& log, const ReductionOptions& opts = {});

/// Label-independent serialisation: vertices stay fixed, arrows are
/// renumbered. Equal strings imply isomorphic QPs; the converse holds unless
/// parallel arrow classes are too large to search exhaustively.
std::string canonical_form(const QP& qp);

/// True iff the QPs agree after an arrow bijection fixing vertices together
/// with a rescaling of each arrow by a nonzero scalar.
bool equivalent_up_to_rescaling(const QP& x, const QP& y);

enum class ProbeStatus { Pass, Counterexample, BudgetExceeded };

struct ProbeVerdict {
  ProbeStatus status = ProbeStatus::Pass;
  int depth = 0;
  std::size_t nodes = 0;
  std::vector<VertexId> word;  // set for counterexamples
};

std::string to_string(ProbeStatus s);

/// Breadth-first search over mutation words without immediate repeats.
ProbeVerdict probe_nondegeneracy(const QP& qp, int depth, std::size_t budget,
                                 const ReductionOptions& opts = {});

}  // namespace qpseed
