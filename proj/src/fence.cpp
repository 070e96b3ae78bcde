#include "qpseed/fence.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

namespace qpseed {

BraidWord parse_braid(std::string_view text, std::optional<int> strands) {
  BraidWord w;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); };
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    std::string_view tok = text.substr(i, j - i);
    i = j;
    std::string_view digits = tok;
    if (!digits.empty() && (digits[0] == 's' || digits[0] == 'S')) digits.remove_prefix(1);
    int k = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (digits.empty() || ec != std::errc() || end != digits.data() + digits.size() || k < 1)
      throw BraidError("invalid braid letter '" + std::string(tok) + "'");
    w.letters.push_back(k);
  }
  int top = w.letters.empty() ? 0 : *std::max_element(w.letters.begin(), w.letters.end());
  if (strands) {
    if (*strands < 1) throw BraidError("strand count must be positive");
    if (*strands < 2 && !w.letters.empty()) throw BraidError("a nonempty braid needs at least 2 strands");
    if (top > *strands - 1)
      throw BraidError("letter " + std::to_string(top) + " needs more than " + std::to_string(*strands) + " strands");
    w.strands = *strands;
  } else {
    w.strands = top + 1;
  }
  return w;
}

std::string format_braid(const BraidWord& w) {
  std::string s;
  for (int k : w.letters) {
    if (!s.empty()) s += ' ';
    s += std::to_string(k);
  }
  return s;
}

PlabicFence fence_from_braid(const BraidWord& w) {
  for (int k : w.letters)
    if (k < 1 || k > w.strands - 1) throw BraidError("letter out of range: " + std::to_string(k));
  return PlabicFence{w.strands, w.letters};
}

BraidWord braid_from_fence(const PlabicFence& f) { return BraidWord{f.strands, f.levels}; }

PlabicFence prefix(const PlabicFence& f, std::size_t count) {
  PlabicFence p{f.strands, {}};
  p.levels.assign(f.levels.begin(), f.levels.begin() + std::min(count, f.size()));
  return p;
}

namespace {

std::optional<std::size_t> previous_at(const PlabicFence& f, std::size_t e, int level) {
  for (std::size_t i = e; i-- > 0;)
    if (f.levels[i] == level) return i;
  return std::nullopt;
}

std::optional<std::size_t> first_between(const PlabicFence& f, std::size_t lo, std::size_t hi, int level) {
  for (std::size_t i = lo + 1; i < hi; ++i)
    if (f.levels[i] == level) return i;
  return std::nullopt;
}

}  // namespace

std::vector<Face> faces(const PlabicFence& f) {
  std::vector<Face> out;
  std::map<int, std::pair<std::size_t, int>> last;  // level -> (edge, faces so far)
  for (std::size_t e = 0; e < f.size(); ++e) {
    int k = f.levels[e];
    auto it = last.find(k);
    if (it != last.end()) {
      int ord = ++it->second.second;
      out.push_back(Face{"L" + std::to_string(k) + "#" + std::to_string(ord), k, ord, it->second.first, e});
      it->second.first = e;
    } else {
      last[k] = {e, 0};
    }
  }
  return out;
}

std::optional<Face> face_with_right_edge(const PlabicFence& f, std::size_t e) {
  if (e >= f.size()) return std::nullopt;
  auto d = previous_at(f, e, f.levels[e]);
  if (!d) return std::nullopt;
  int ord = 0;
  for (std::size_t i = 0; i <= e; ++i)
    if (f.levels[i] == f.levels[e]) ++ord;
  return Face{"L" + std::to_string(f.levels[e]) + "#" + std::to_string(ord - 1), f.levels[e], ord - 1, *d, e};
}

namespace {

std::optional<PenteRow> row_at(const PlabicFence& f, std::size_t e, RowColor color) {
  const int h = f.levels[e];
  const int other = color == RowColor::Black ? h - 1 : h + 1;
  if (other < 1 || other > f.strands - 1) return std::nullopt;
  auto d = previous_at(f, e, h);
  if (!d) return std::nullopt;
  std::vector<std::size_t> run{*d};
  for (;;) {
    auto p = previous_at(f, run.front(), h);
    if (!p || first_between(f, *p, run.front(), other)) break;
    run.insert(run.begin(), *p);
  }
  auto wl = previous_at(f, run.front(), other);
  auto wr = first_between(f, *d, e, other);
  auto first_face = face_with_right_edge(f, run.front());
  if (!wl || !wr || !first_face) return std::nullopt;
  PenteRow row;
  row.color = color;
  row.line = color == RowColor::Black ? h : h + 1;
  row.run = run;
  row.left_bound = *wl;
  row.right_bound = *wr;
  row.right_face = face_with_right_edge(f, e)->id;
  for (std::size_t b : run) row.cycle.push_back(face_with_right_edge(f, b)->id);
  row.cycle.push_back(row.right_face);
  row.cycle.push_back(face_with_right_edge(f, *wr)->id);
  return row;
}

}  // namespace

PenteRows pente_rows_at(const PlabicFence& f, std::size_t e) {
  if (!face_with_right_edge(f, e)) throw FenceError("edge " + std::to_string(e + 1) + " is not the right edge of a face");
  PlabicFence upto = prefix(f, e + 1);
  return PenteRows{row_at(upto, e, RowColor::Black), row_at(upto, e, RowColor::White)};
}

FenceScan scan_fence(const PlabicFence& f) {
  FenceScan s;
  s.face_at.resize(f.size());
  s.arrows.resize(f.size());
  for (std::size_t e = 0; e < f.size(); ++e) s.face_at[e] = face_with_right_edge(f, e);
  std::vector<std::optional<VertexId>> vertex(f.size());
  for (std::size_t e = 0; e < f.size(); ++e)
    if (s.face_at[e]) vertex[e] = s.qp.quiver.add_vertex(s.face_at[e]->id);

  auto need = [&](const std::optional<ArrowId>& a) {
    if (!a) throw FenceError("pente-row arrow missing from the scan");
    return *a;
  };
  for (std::size_t e = 0; e < f.size(); ++e) {
    if (!vertex[e]) continue;
    const int k = f.levels[e];
    const std::size_t d = s.face_at[e]->left_edge;
    EdgeArrows& ea = s.arrows[e];
    if (vertex[d]) ea.from_left = s.qp.quiver.add_arrow(*vertex[d], *vertex[e]);
    if (auto up = first_between(f, d, e, k + 1); up && vertex[*up])
      ea.to_above = s.qp.quiver.add_arrow(*vertex[e], *vertex[*up]);
    if (auto down = first_between(f, d, e, k - 1); down && vertex[*down])
      ea.to_below = s.qp.quiver.add_arrow(*vertex[e], *vertex[*down]);

    PenteRows rows = pente_rows_at(f, e);
    if (rows.black) {
      Word w;
      for (std::size_t i = 1; i < rows.black->run.size(); ++i) w.push_back(need(s.arrows[rows.black->run[i]].from_left));
      w.push_back(need(ea.from_left));
      w.push_back(need(ea.to_below));
      w.push_back(need(s.arrows[rows.black->right_bound].to_above));
      s.qp.potential.add(w, Rational(1));
    }
    if (rows.white) {
      Word w;
      for (std::size_t i = 1; i < rows.white->run.size(); ++i) w.push_back(need(s.arrows[rows.white->run[i]].from_left));
      w.push_back(need(ea.from_left));
      w.push_back(need(ea.to_above));
      w.push_back(need(s.arrows[rows.white->right_bound].to_below));
      s.qp.potential.add(w, Rational(-1));
    }
  }
  return s;
}

QP build_qp(const PlabicFence& f) { return scan_fence(f).qp; }

std::vector<std::string> source_sequence(const PlabicFence& f, std::size_t e) {
  if (f.size() == 0 || e != f.size() - 1) throw FenceError("source sequence needs the rightmost edge");
  auto fe = face_with_right_edge(f, e);
  if (!fe) throw FenceError("edge " + std::to_string(e + 1) + " is not the right edge of a face");
  std::vector<std::string> seq;
  for (const Face& x : faces(f))
    if (x.level == fe->level && x.id != fe->id) seq.push_back(x.id);
  return seq;
}

}  // namespace qpseed
