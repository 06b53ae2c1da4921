#pragma once

// The dual module: pairs U^a (x) K modulo the adjunction relations
//   U^{n+a} (x) (K + 2PD[v]) ~ U^a (x) K        if 2n = <K,v> + v.v >= 0
//   U^a (x) (K + 2PD[v])     ~ U^{a-n} (x) K    if n <= 0.
// Both read as one rule: stepping K -> K + 2PD[v] adds n to the exponent,
// provided the exponent stays non-negative. The running exponent along any
// lattice path from K1 therefore depends only on the endpoint, and equals
// path_weight(K1, K) = (<K1, x> + x.x) / 2 where Q x = (k - k1) / 2.
//
// The grading 2a - (K^2 + |G|)/4 is constant on equivalence classes because
// (K + 2PD[v])^2 = K^2 + 8n, so the classes of a fixed degree form a finite
// set that can be enumerated exactly.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "plumb/engine.hpp"
#include "plumb/lattice.hpp"
#include "plumb/numeric.hpp"

namespace plumb {

inline constexpr std::int64_t kDefaultMaxU = 8;

/// 2 |V|.
std::int64_t default_expansion(const QFormContext& ctx);

struct UState {
  std::int64_t a = 0;
  CharVector k;
};

/// (<K,v> + v.v) / 2.
std::int64_t step_weight(const CharVector& k, std::size_t v, const QFormContext& ctx);

/// Sum of step weights along any lattice path K1 -> K2. Throws
/// PreconditionError when the vectors are in different classes.
Int path_weight(const CharVector& k1, const CharVector& k2, const QFormContext& ctx);

/// Grading of U^a (x) K.
Rational state_degree(std::int64_t a, const CharVector& k, const QFormContext& ctx);

struct MinimalRelation {
  CharVector k1;
  CharVector k2;
  Int n;  // U^n (x) K1 ~ U^m (x) K2
  Int m;
};

/// Smallest n (and m = n + path_weight) with U^n (x) K1 ~ U^m (x) K2, found
/// by a bottleneck shortest-path search over the lattice restricted to
/// pairings in [m(v)+2-2B, -m(v)+2B]. Throws BoundExceeded when no path
/// exists inside that box, PreconditionError for different classes.
MinimalRelation minimal_relation(const CharVector& k1, const CharVector& k2, const QFormContext& ctx,
                                 std::int64_t expansion = -1);

struct DegreeCount {
  Rational degree;
  std::uint64_t count = 0;
};

struct ClassTable {
  SpincClass spinc;
  Rational bottom;                  // lowest degree present
  std::vector<DegreeCount> counts;  // every degree bottom, bottom+2, ..., top
  std::uint64_t reduced_rank = 0;   // sum (count - 1)
  bool converged = false;           // count == 1 at the top of the window
  std::uint64_t states = 0;
  std::uint64_t edges = 0;
  std::uint64_t degree_violations = 0;  // relation edges joining unequal degrees
};

struct HfTable {
  std::vector<ClassTable> classes;
  std::int64_t max_u = kDefaultMaxU;

  bool converged() const;
  std::uint64_t reduced_rank() const;
};

struct TruncationOptions {
  std::int64_t max_u = kDefaultMaxU;
  std::uint64_t state_budget = 20'000'000;
};

/// Equivalence classes of all states U^a (x) K with degree at most
/// -d(t) + 2 max_u, per Spin^c class, counted per degree with union-find.
/// Every state of a degree inside the window is enumerated, so the counts are
/// exact there; the table is flagged unconverged if the top count is not 1.
HfTable truncated_classes(const QFormContext& ctx, const BasicSet& basics, const TruncationOptions& options = {});

/// As truncated_classes, but throws Unconverged when any class fails to reach
/// the tower within the window.
HfTable hf_summary(const QFormContext& ctx, const BasicSet& basics, const TruncationOptions& options = {});

}  // namespace plumb
