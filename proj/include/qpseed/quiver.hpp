#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qpseed/rational.hpp"

namespace qpseed {

using VertexId = std::uint32_t;
using ArrowId = std::uint32_t;

/// Arrows listed in traversal order: head(w[i]) == tail(w[i+1]).
using Word = std::vector<ArrowId>;

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Arrow {
  ArrowId id = 0;
  VertexId tail = 0;
  VertexId head = 0;
  std::string name;
};

/// Loop-free multidigraph. Arrow ids are issued from a monotone counter and
/// never reused; their numeric order is the total order used for canonical
/// rotations.
class Quiver {
 public:
  VertexId add_vertex(std::string name);
  ArrowId add_arrow(VertexId tail, VertexId head, std::string name = {});
  /// Re-inserts an arrow under its existing id; the id must be unused.
  void insert_arrow(const Arrow& a);
  void remove_arrow(ArrowId id);

  std::size_t vertex_count() const { return vertices_.size(); }
  const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
  const std::vector<std::string>& vertex_names() const { return vertices_; }
  std::optional<VertexId> find_vertex(std::string_view name) const;

  const std::map<ArrowId, Arrow>& arrows() const { return arrows_; }
  bool has_arrow(ArrowId id) const { return arrows_.count(id) != 0; }
  const Arrow& arrow(ArrowId id) const;
  std::optional<ArrowId> find_arrow(std::string_view name) const;

  ArrowId next_arrow_id() const { return next_id_; }
  /// Ensures every future id is >= `next`.
  void reserve_ids(ArrowId next);

  std::vector<ArrowId> arrows_into(VertexId v) const;
  std::vector<ArrowId> arrows_out_of(VertexId v) const;

 private:
  std::string fresh_name(ArrowId id) const;

  std::vector<std::string> vertices_;
  std::map<ArrowId, Arrow> arrows_;
  ArrowId next_id_ = 1;
};

/// Formal sum of cyclic words; keys are canonical rotations, no zero
/// coefficients are stored.
class Potential {
 public:
  /// Adds c * (cyclic class of w). `w` need not be in canonical rotation.
  void add(const Word& w, const Rational& c);
  Rational coefficient(const Word& w) const;
  const std::map<Word, Rational>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t max_degree() const;
  bool mentions(ArrowId a) const;

  friend bool operator==(const Potential&, const Potential&) = default;

 private:
  std::map<Word, Rational> terms_;
};

struct QP {
  Quiver quiver;
  Potential potential;
};

/// Throws AlgebraError unless every potential cycle is a closed path of
/// existing arrows.
void validate(const QP& qp);

}  // namespace qpseed
