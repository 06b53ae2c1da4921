#pragma once

// Weighted plumbing forests: parsing, the intersection form, definiteness,
// blow-down reduction and canonical codes for isomorphism testing.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plumb/numeric.hpp"

namespace plumb {

struct Vertex {
  std::string id;
  std::int64_t weight = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

using Edge = std::pair<std::size_t, std::size_t>;

/// A weighted forest G. Vertices keep file order; edges are stored as index
/// pairs in insertion order. Construction validates the forest invariants
/// (known endpoints, no self-loops, no repeated edges, no cycles) and throws
/// GraphError otherwise. Immutable afterwards.
class PlumbingForest {
 public:
  PlumbingForest() = default;
  PlumbingForest(std::vector<Vertex> vertices, const std::vector<std::pair<std::string, std::string>>& edges);

  /// Auto-named vertices v1..vn.
  static PlumbingForest from_weights(std::span<const std::int64_t> weights, std::span<const Edge> edges);

  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }

  const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }
  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const std::size_t> neighbors(std::size_t i) const { return adjacency_.at(i); }

  std::int64_t weight(std::size_t i) const { return vertices_.at(i).weight; }
  std::vector<std::int64_t> weights() const;
  std::size_t degree(std::size_t i) const { return adjacency_.at(i).size(); }
  bool adjacent(std::size_t i, std::size_t j) const;

  std::optional<std::size_t> index_of(std::string_view id) const;

  /// Connected components as sorted vertex-index lists, ordered by smallest index.
  std::vector<std::vector<std::size_t>> components() const;
  bool connected() const;

  /// Same vertex list (ids, weights, order) and the same unordered edge set.
  friend bool operator==(const PlumbingForest& a, const PlumbingForest& b);

 private:
  void build(const std::vector<Edge>& edges);

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Line-oriented graph source:
///   # comment
///   vertex <id> <int>
///   edge <id> <id>
///   chain <int> <int> ...    (a path, vertices named c1, c2, ... in order)
PlumbingForest parse_forest(std::string_view text);

/// {"vertices":[{"id":..,"weight":..}], "edges":[[..,..]]}
PlumbingForest parse_forest_json(std::string_view text);

/// Dispatches on the first non-blank character ('{' means JSON).
PlumbingForest parse_forest_auto(std::string_view text);

/// Convenience for tests and the CLI: chain({-2,-1,-2}).
PlumbingForest chain(std::span<const std::int64_t> weights);
PlumbingForest chain(std::initializer_list<std::int64_t> weights);

/// Star with the given center weight and one single-vertex leg per leaf weight.
PlumbingForest star(std::int64_t center, std::initializer_list<std::int64_t> leaves);

/// All-(-2) E8 tree: path v1..v7 with v8 attached to v5.
PlumbingForest e8_forest();

// --- intersection form ------------------------------------------------------

/// Q[v][v] = m(v), Q[v][w] = 1 for edges, 0 otherwise.
class IntersectionMatrix {
 public:
  explicit IntersectionMatrix(const PlumbingForest& forest);

  std::size_t size() const noexcept { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::vector<std::vector<std::int64_t>> rows() const;

 private:
  std::size_t n_;
  std::vector<std::int64_t> entries_;
};

IntersectionMatrix intersection_matrix(const PlumbingForest& forest);

/// Leaf-first Schur elimination on the tree: every eliminated pivot must be
/// strictly negative. Exact; falls back to big integers on overflow.
bool is_negative_definite(const PlumbingForest& forest);

/// Signed det Q via fraction-free elimination.
Int determinant(const PlumbingForest& forest);

/// |det Q|; 0 when the form is degenerate.
Int h1_order(const PlumbingForest& forest);

// --- blow-down reduction ----------------------------------------------------

enum class MoveKind { BlowDownIsolated, BlowDownLeaf, BlowDownChain };

struct ReductionMove {
  MoveKind kind;
  std::string removed;                                      // id of the -1 vertex
  std::vector<std::string> neighbors;                       // 0, 1 or 2 ids
  std::vector<std::pair<std::string, std::int64_t>> weight_changes;
};

struct ReductionTrace {
  std::vector<ReductionMove> moves;
  bool empty() const noexcept { return moves.empty(); }
};

struct Reduction {
  PlumbingForest forest;
  ReductionTrace trace;
};

/// Blows down weight -1 vertices of degree <= 2 until none is left. The
/// lowest-index candidate goes first; pass an engine to pick candidates at
/// random instead.
Reduction reduce(const PlumbingForest& forest, std::mt19937_64* rng = nullptr);

/// Re-applies a trace to its input; reproduces the reduced forest exactly.
PlumbingForest replay(const PlumbingForest& forest, const ReductionTrace& trace);

bool is_minimal(const PlumbingForest& forest);

// --- canonical codes --------------------------------------------------------

/// Weight-aware canonical form. Each component is rooted at its centroid and
/// encoded with sorted child codes; components are sorted and joined with '+'.
/// Equal codes iff the forests are isomorphic as weighted graphs.
std::string canonical_code(const PlumbingForest& forest);
/// Same code from raw weights and adjacency lists.
std::string canonical_code(std::span<const std::int64_t> weights, const std::vector<std::vector<std::size_t>>& adjacency);

/// Canonical code with all weights ignored (shape only).
std::string shape_code(const PlumbingForest& forest);

}  // namespace plumb
