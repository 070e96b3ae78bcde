#include "qpseed/quiver.hpp"

#include <algorithm>

#include "qpseed/path_algebra.hpp"

namespace qpseed {

VertexId Quiver::add_vertex(std::string name) {
  if (find_vertex(name)) throw AlgebraError("duplicate vertex name: " + name);
  vertices_.push_back(std::move(name));
  return static_cast<VertexId>(vertices_.size() - 1);
}

std::string Quiver::fresh_name(ArrowId id) const {
  std::string base = "a" + std::to_string(id);
  std::string name = base;
  for (int k = 1; find_arrow(name); ++k) name = base + "_" + std::to_string(k);
  return name;
}

ArrowId Quiver::add_arrow(VertexId tail, VertexId head, std::string name) {
  if (tail >= vertices_.size() || head >= vertices_.size())
    throw AlgebraError("arrow endpoint is not a vertex");
  if (tail == head) throw AlgebraError("loops are not allowed (vertex " + vertices_[tail] + ")");
  ArrowId id = next_id_++;
  if (name.empty()) {
    name = fresh_name(id);
  } else if (find_arrow(name)) {
    throw AlgebraError("duplicate arrow name: " + name);
  }
  arrows_.emplace(id, Arrow{id, tail, head, std::move(name)});
  return id;
}

void Quiver::insert_arrow(const Arrow& a) {
  if (a.tail >= vertices_.size() || a.head >= vertices_.size())
    throw AlgebraError("arrow endpoint is not a vertex");
  if (a.tail == a.head) throw AlgebraError("loops are not allowed");
  if (arrows_.count(a.id)) throw AlgebraError("arrow id already in use: " + std::to_string(a.id));
  if (a.name.empty() || find_arrow(a.name)) throw AlgebraError("bad or duplicate arrow name: " + a.name);
  arrows_.emplace(a.id, a);
  next_id_ = std::max(next_id_, a.id + 1);
}

void Quiver::remove_arrow(ArrowId id) {
  if (arrows_.erase(id) == 0) throw AlgebraError("no arrow with id " + std::to_string(id));
}

std::optional<VertexId> Quiver::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == name) return static_cast<VertexId>(i);
  return std::nullopt;
}

const Arrow& Quiver::arrow(ArrowId id) const {
  auto it = arrows_.find(id);
  if (it == arrows_.end()) throw AlgebraError("no arrow with id " + std::to_string(id));
  return it->second;
}

std::optional<ArrowId> Quiver::find_arrow(std::string_view name) const {
  for (const auto& [id, a] : arrows_)
    if (a.name == name) return id;
  return std::nullopt;
}

void Quiver::reserve_ids(ArrowId next) { next_id_ = std::max(next_id_, next); }

std::vector<ArrowId> Quiver::arrows_into(VertexId v) const {
  std::vector<ArrowId> out;
  for (const auto& [id, a] : arrows_)
    if (a.head == v) out.push_back(id);
  return out;
}

std::vector<ArrowId> Quiver::arrows_out_of(VertexId v) const {
  std::vector<ArrowId> out;
  for (const auto& [id, a] : arrows_)
    if (a.tail == v) out.push_back(id);
  return out;
}

void Potential::add(const Word& w, const Rational& coef) {
  if (w.empty()) throw AlgebraError("potential terms must be nonempty cycles");
  Rational c = coef;
  c.canonicalize();
  if (c == 0) return;
  Word key = canonical_rotation(w);
  auto [it, inserted] = terms_.try_emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Potential::coefficient(const Word& w) const {
  auto it = terms_.find(canonical_rotation(w));
  return it == terms_.end() ? Rational(0) : it->second;
}

std::size_t Potential::max_degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.size());
  return d;
}

bool Potential::mentions(ArrowId a) const {
  for (const auto& [w, c] : terms_)
    if (std::find(w.begin(), w.end(), a) != w.end()) return true;
  return false;
}

void validate(const QP& qp) {
  for (const auto& [w, c] : qp.potential.terms()) {
    for (ArrowId a : w)
      if (!qp.quiver.has_arrow(a)) throw AlgebraError("potential uses unknown arrow " + std::to_string(a));
    if (!is_closed_path(qp.quiver, w)) throw AlgebraError("potential term is not a closed path");
  }
}

}  // namespace qpseed
