#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace modvar {

using Vertex = std::size_t;
using ArrowId = std::size_t;

struct Arrow {
  std::string name;
  Vertex src = 0;
  Vertex tgt = 0;
};

class Quiver {
 public:
  Quiver() = default;
  /// Throws InputError on out-of-range endpoints or duplicate names.
  Quiver(std::size_t n_vertices, std::vector<Arrow> arrows);

  std::size_t n_vertices() const { return n_; }
  std::size_t n_arrows() const { return arrows_.size(); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  std::optional<ArrowId> find(const std::string& name) const;
  ArrowId index_of(const std::string& name) const;
  bool has_oriented_cycle() const;

 private:
  std::size_t n_ = 0;
  std::vector<Arrow> arrows_;
};

/// A path in application order: arrows.front() acts first. Composition-order
/// juxtaposition "xy" (y acts first) is the list [y, x].
struct Path {
  Vertex src = 0;
  Vertex tgt = 0;
  std::vector<ArrowId> arrows;

  static Path trivial(Vertex v) { return {v, v, {}}; }
  static Path from_arrows(const Quiver& q, std::vector<ArrowId> arrows);
  std::size_t length() const { return arrows.size(); }

  friend bool operator==(const Path&, const Path&) = default;
};

/// x ∘ y: y first, then x. Empty if tgt(y) != src(x).
std::optional<Path> compose(const Path& x, const Path& y);

/// Human-readable application-order form, e.g. "e2" or "b.a" (b acts first).
std::string to_string(const Quiver& q, const Path& p);

/// Deterministic order: by length, then lexicographically by the arrow-name
/// sequence; trivial paths by vertex.
bool path_less(const Quiver& q, const Path& a, const Path& b);

struct RelationTerm {
  std::int64_t coeff = 0;
  Path path;
};
using Relation = std::vector<RelationTerm>;

struct AlgebraSpec {
  Quiver quiver;
  std::vector<Relation> relations;
  std::size_t trunc = 2;

  /// Admissibility (every path length ≥ 2), parallel terms, trunc ≥ 2.
  void validate() const;
};

}  // namespace modvar
