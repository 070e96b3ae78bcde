#include "qpseed/path_algebra.hpp"

#include <algorithm>
#include <string>

namespace qpseed {

void add_term(PathPoly& p, const Word& w, const Rational& coef) {
  Rational c = coef;
  c.canonicalize();
  if (c == 0) return;
  auto [it, inserted] = p.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

PathPoly add(const PathPoly& p, const PathPoly& q) {
  PathPoly r = p;
  for (const auto& [w, c] : q) add_term(r, w, c);
  return r;
}

PathPoly scale(const PathPoly& p, const Rational& r) {
  PathPoly out;
  if (r == 0) return out;
  for (const auto& [w, c] : p) add_term(out, w, c * r);
  return out;
}

PathPoly multiply(const PathPoly& p, const PathPoly& q) {
  PathPoly out;
  for (const auto& [u, cu] : p)
    for (const auto& [v, cv] : q) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      add_term(out, w, cu * cv);
    }
  return out;
}

Word canonical_rotation(const Word& w) {
  const std::size_t n = w.size();
  if (n < 2) return w;
  std::size_t best = 0;
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      ArrowId x = w[(s + i) % n];
      ArrowId y = w[(best + i) % n];
      if (x != y) {
        if (x < y) best = s;
        break;
      }
    }
  }
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(w[(best + i) % n]);
  return out;
}

bool is_path(const Quiver& q, const Word& w) {
  if (w.empty()) return false;
  for (ArrowId a : w)
    if (!q.has_arrow(a)) return false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (q.arrow(w[i]).head != q.arrow(w[i + 1]).tail) return false;
  return true;
}

bool is_closed_path(const Quiver& q, const Word& w) {
  return is_path(q, w) && q.arrow(w.back()).head == q.arrow(w.front()).tail;
}

Word cyc_normalize(const Quiver& q, const Word& w) {
  if (w.empty()) throw AlgebraError("empty word");
  if (!is_path(q, w)) throw AlgebraError("word is not a composable path");
  if (q.arrow(w.back()).head != q.arrow(w.front()).tail) throw AlgebraError("word is not closed");
  return canonical_rotation(w);
}

Potential add(const Potential& p, const Potential& q) {
  Potential r = p;
  for (const auto& [w, c] : q.terms()) r.add(w, c);
  return r;
}

Potential scale(const Potential& p, const Rational& r) {
  Potential out;
  for (const auto& [w, c] : p.terms()) out.add(w, c * r);
  return out;
}

PathPoly cyclic_derivative(const Potential& p, ArrowId a) {
  PathPoly out;
  for (const auto& [w, c] : p.terms()) {
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] != a) continue;
      Word rest;
      rest.reserve(n - 1);
      for (std::size_t k = 1; k < n; ++k) rest.push_back(w[(i + k) % n]);
      if (rest.empty()) continue;
      add_term(out, rest, c);
    }
  }
  return out;
}

namespace {

void check_rules(const Quiver& q, const SubstitutionRules& rules) {
  for (const auto& [a, poly] : rules) {
    const Arrow& arr = q.arrow(a);
    for (const auto& [w, c] : poly) {
      if (!is_path(q, w) || q.arrow(w.front()).tail != arr.tail || q.arrow(w.back()).head != arr.head)
        throw AlgebraError("replacement for arrow " + arr.name + " is not parallel to it");
    }
  }
}

// Expands the image of `w` under the rules, accumulating into `emit`.
template <class Emit>
void expand_word(const Word& w, const Rational& coef, const SubstitutionRules& rules,
                 std::optional<std::size_t> max_degree, Emit&& emit) {
  // Depth-first over the choice of replacement term per letter.
  std::vector<std::pair<const PathPoly*, ArrowId>> letters;
  letters.reserve(w.size());
  for (ArrowId a : w) {
    auto it = rules.find(a);
    letters.emplace_back(it == rules.end() ? nullptr : &it->second, a);
  }
  Word current;
  auto rec = [&](auto&& self, std::size_t i, const Rational& c) -> void {
    if (max_degree && current.size() + (w.size() - i) > *max_degree) return;
    if (i == letters.size()) {
      emit(current, c);
      return;
    }
    const auto& [poly, a] = letters[i];
    if (!poly) {
      current.push_back(a);
      self(self, i + 1, c);
      current.pop_back();
      return;
    }
    for (const auto& [piece, pc] : *poly) {
      std::size_t mark = current.size();
      current.insert(current.end(), piece.begin(), piece.end());
      self(self, i + 1, c * pc);
      current.resize(mark);
    }
  };
  rec(rec, 0, coef);
}

}  // namespace

Potential substitute(const Quiver& q, const Potential& p, const SubstitutionRules& rules,
                     std::optional<std::size_t> max_degree) {
  check_rules(q, rules);
  Potential out;
  for (const auto& [w, c] : p.terms())
    expand_word(w, c, rules, max_degree, [&](const Word& img, const Rational& k) { out.add(img, k); });
  return out;
}

PathPoly substitute(const Quiver& q, const PathPoly& p, const SubstitutionRules& rules,
                    std::optional<std::size_t> max_degree) {
  check_rules(q, rules);
  PathPoly out;
  for (const auto& [w, c] : p)
    expand_word(w, c, rules, max_degree, [&](const Word& img, const Rational& k) { add_term(out, img, k); });
  return out;
}

SubstitutionRules invert_unitriangular(const Quiver& q, const SubstitutionRules& rules,
                                       std::size_t max_degree) {
  // phi(a) = a + h_a with deg h_a >= 2; the inverse satisfies psi(a) = a - h_a(psi).
  SubstitutionRules higher;
  for (const auto& [a, poly] : rules) {
    PathPoly h = poly;
    add_term(h, Word{a}, Rational(-1));
    for (const auto& [w, c] : h)
      if (w.size() < 2) throw AlgebraError("substitution is not unitriangular");
    higher.emplace(a, std::move(h));
  }
  SubstitutionRules psi;
  for (const auto& [a, h] : higher) psi[a] = PathPoly{{Word{a}, Rational(1)}};
  for (std::size_t iter = 0; iter < max_degree; ++iter) {
    SubstitutionRules next;
    for (const auto& [a, h] : higher) {
      PathPoly img = substitute(q, h, psi, max_degree);
      PathPoly r{{Word{a}, Rational(1)}};
      next[a] = add(r, scale(img, Rational(-1)));
    }
    if (next == psi) break;
    psi = std::move(next);
  }
  return psi;
}

}  // namespace qpseed
