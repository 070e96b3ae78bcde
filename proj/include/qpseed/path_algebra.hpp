#pragma once

#include <map>
#include <optional>

#include "qpseed/quiver.hpp"

namespace qpseed {

/// Formal linear combination of (open) paths.
using PathPoly = std::map<Word, Rational>;

void add_term(PathPoly& p, const Word& w, const Rational& c);
PathPoly add(const PathPoly& p, const PathPoly& q);
PathPoly scale(const PathPoly& p, const Rational& r);
/// Concatenation product; zero terms dropped.
PathPoly multiply(const PathPoly& p, const PathPoly& q);

/// Minimal rotation under the numeric order of arrow ids. No validation.
Word canonical_rotation(const Word& w);

bool is_path(const Quiver& q, const Word& w);
bool is_closed_path(const Quiver& q, const Word& w);

/// Validating canonicalisation: throws AlgebraError for empty, non-composable
/// or open words.
Word cyc_normalize(const Quiver& q, const Word& w);

Potential add(const Potential& p, const Potential& q);
Potential scale(const Potential& p, const Rational& r);

/// For each occurrence of `a`: the word rotated to start right after it,
/// with `a` removed. Resulting paths run from head(a) to tail(a).
PathPoly cyclic_derivative(const Potential& p, ArrowId a);

/// Simultaneous replacement a -> rules[a] in every monomial. Arrows without
/// a rule are fixed. Terms longer than `max_degree` are discarded when given.
/// Throws AlgebraError if a replacement term is not parallel to its arrow.
using SubstitutionRules = std::map<ArrowId, PathPoly>;
Potential substitute(const Quiver& q, const Potential& p, const SubstitutionRules& rules,
                     std::optional<std::size_t> max_degree = std::nullopt);

/// Same substitution applied to open paths.
PathPoly substitute(const Quiver& q, const PathPoly& p, const SubstitutionRules& rules,
                    std::optional<std::size_t> max_degree = std::nullopt);

/// Formal inverse of a unitriangular substitution (a -> a + higher order
/// terms), truncated at `max_degree`.
SubstitutionRules invert_unitriangular(const Quiver& q, const SubstitutionRules& rules,
                                       std::size_t max_degree);

}  // namespace qpseed
