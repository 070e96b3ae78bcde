#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qpseed/quiver.hpp"

namespace qpseed {

class BraidError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Positive braid word: letters are Artin generator indices in [1, strands-1].
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

/// Tokenizes "1 2 1", "s1,s2,s1" and mixtures thereof. When `strands` is
/// absent it is inferred as max letter + 1 (1 for the empty word).
BraidWord parse_braid(std::string_view text, std::optional<int> strands = std::nullopt);

std::string format_braid(const BraidWord& w);

/// Edge i of the fence sits at x-position i and joins horizontal lines
/// `level` and `level + 1` (white on top, black on bottom).
struct PlabicFence {
  int strands = 1;
  std::vector<int> levels;

  std::size_t size() const { return levels.size(); }
};

PlabicFence fence_from_braid(const BraidWord& w);
BraidWord braid_from_fence(const PlabicFence& f);

/// Region between two x-consecutive edges at the same level.
struct Face {
  std::string id;  // "L{level}#{ordinal}"
  int level = 0;
  int ordinal = 0;  // 1-based, left to right within the level
  std::size_t left_edge = 0;
  std::size_t right_edge = 0;
};

/// Faces in scan order, i.e. sorted by right edge.
std::vector<Face> faces(const PlabicFence& f);

/// The face whose right vertical edge is `e`, if any.
std::optional<Face> face_with_right_edge(const PlabicFence& f, std::size_t e);

enum class RowColor { Black, White };

struct PenteRow {
  RowColor color = RowColor::Black;
  int line = 0;                     // horizontal line carrying the run (1 = bottom)
  std::vector<std::size_t> run;     // edges whose endpoints form the run
  std::size_t left_bound = 0;       // opposite-colour bounding edges
  std::size_t right_bound = 0;
  std::string right_face;
  std::vector<std::string> cycle;   // faces in quiver traversal order
};

struct PenteRows {
  std::optional<PenteRow> black;
  std::optional<PenteRow> white;
};

/// Pente-rows with right face F_e, using only edges with x-position <= e.
/// Throws FenceError when F_e does not exist.
PenteRows pente_rows_at(const PlabicFence& f, std::size_t e);

/// Arrows contributed by one edge during the left-to-right scan.
struct EdgeArrows {
  std::optional<ArrowId> from_left;  // F_d -> F_e
  std::optional<ArrowId> to_above;   // F_e -> F_{d up}
  std::optional<ArrowId> to_below;   // F_e -> F_{d down}
};

struct FenceScan {
  QP qp;
  std::vector<std::optional<Face>> face_at;  // indexed by edge
  std::vector<EdgeArrows> arrows;            // indexed by edge
};

FenceScan scan_fence(const PlabicFence& f);

/// The fence quiver with potential. Vertices are faces in scan order,
/// arrows are named a1, a2, ... in creation order.
QP build_qp(const PlabicFence& f);

/// Fence made of the first `count` edges.
PlabicFence prefix(const PlabicFence& f, std::size_t count);

/// For the rightmost edge e: the faces at e's level, left to right, excluding
/// F_e. Mutating along them turns F_e into a source.
std::vector<std::string> source_sequence(const PlabicFence& f, std::size_t e);

}  // namespace qpseed
