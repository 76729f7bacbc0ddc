#include "modvar/quiver.hpp"

#include <set>

#include "modvar/errors.hpp"

namespace modvar {

Quiver::Quiver(std::size_t n_vertices, std::vector<Arrow> arrows) : n_(n_vertices), arrows_(std::move(arrows)) {
  std::set<std::string> names;
  for (const auto& a : arrows_) {
    if (a.src >= n_ || a.tgt >= n_)
      throw InputError("arrow '" + a.name + "' has an endpoint outside 0.." + std::to_string(n_) + "-1");
    if (a.name.empty()) throw InputError("arrow with empty name");
    if (!names.insert(a.name).second) throw InputError("duplicate arrow name '" + a.name + "'");
  }
}

std::optional<ArrowId> Quiver::find(const std::string& name) const {
  for (ArrowId a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].name == name) return a;
  return std::nullopt;
}

ArrowId Quiver::index_of(const std::string& name) const {
  auto a = find(name);
  if (!a) throw InputError("unknown arrow '" + name + "'");
  return *a;
}

bool Quiver::has_oriented_cycle() const {
  // Kahn's algorithm; loops count as cycles.
  std::vector<std::size_t> indeg(n_, 0);
  for (const auto& a : arrows_) ++indeg[a.tgt];
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < n_; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    Vertex v = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& a : arrows_)
      if (a.src == v && --indeg[a.tgt] == 0) ready.push_back(a.tgt);
  }
  return seen != n_;
}

Path Path::from_arrows(const Quiver& q, std::vector<ArrowId> arrows) {
  if (arrows.empty()) throw InputError("a path needs at least one arrow (use Path::trivial)");
  for (std::size_t k = 0; k + 1 < arrows.size(); ++k) {
    if (q.arrow(arrows[k]).tgt != q.arrow(arrows[k + 1]).src)
      throw InputError("arrows '" + q.arrow(arrows[k]).name + "' then '" + q.arrow(arrows[k + 1]).name +
                       "' do not compose");
  }
  Path p{q.arrow(arrows.front()).src, q.arrow(arrows.back()).tgt, std::move(arrows)};
  return p;
}

std::optional<Path> compose(const Path& x, const Path& y) {
  if (y.tgt != x.src) return std::nullopt;
  Path p{y.src, x.tgt, y.arrows};
  p.arrows.insert(p.arrows.end(), x.arrows.begin(), x.arrows.end());
  return p;
}

std::string to_string(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e" + std::to_string(p.src);
  std::string s;
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) s += '.';
    s += q.arrow(p.arrows[k]).name;
  }
  return s;
}

bool path_less(const Quiver& q, const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.length() == 0) return a.src < b.src;
  for (std::size_t k = 0; k < a.length(); ++k) {
    const auto& na = q.arrow(a.arrows[k]).name;
    const auto& nb = q.arrow(b.arrows[k]).name;
    if (na != nb) return na < nb;
  }
  return false;
}

void AlgebraSpec::validate() const {
  if (trunc < 2) throw InputError("truncation bound must be at least 2, got " + std::to_string(trunc));
  for (std::size_t r = 0; r < relations.size(); ++r) {
    const auto& rel = relations[r];
    if (rel.empty()) throw InputError("relation " + std::to_string(r) + " is empty");
    for (const auto& term : rel) {
      if (term.path.length() < 2)
        throw InputError("relation " + std::to_string(r) + " is not admissible: term '" +
                         to_string(quiver, term.path) + "' has length " + std::to_string(term.path.length()) +
                         " < 2");
      if (term.path.src != rel.front().path.src || term.path.tgt != rel.front().path.tgt)
        throw InputError("relation " + std::to_string(r) + " has non-parallel terms");
    }
  }
}

}  // namespace modvar
