#pragma once

// Path sequences from the PartBox, basic vectors, and the verdicts built on
// them: L-space count, rationality of the canonical class, almost-rationality
// scan, and d-invariants from the grading (K^2 + |G|)/4.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "plumb/lattice.hpp"
#include "plumb/numeric.hpp"

namespace plumb {

enum class Outcome { Basic, Overflow };

struct TerminationResult {
  Outcome outcome = Outcome::Basic;
  CharVector final_vector;             // L for Basic, K_n for Overflow
  std::optional<std::size_t> witness;  // overflow vertex
  std::uint64_t steps = 0;
};

/// Picks one vertex among the candidates with <K_i, v> = -m(v). Candidates are
/// given in increasing index order and are never empty.
using Strategy = std::function<std::size_t(std::span<const std::size_t> candidates)>;

/// 10 * prod |m(v)|.
std::uint64_t default_safety_limit(const QFormContext& ctx);

/// Requires k in the PartBox. With no strategy the lowest candidate index is
/// pushed. safety_limit == 0 selects default_safety_limit. Throws
/// std::runtime_error when the limit is exceeded.
TerminationResult run_path(const CharVector& k, const QFormContext& ctx, const Strategy& strategy = {},
                           std::uint64_t safety_limit = 0);

/// Allocation-free variant with the default strategy; rewrites k in place to
/// the final vector and returns whether it was Basic.
bool run_path_in_place(std::span<std::int64_t> k, const QFormContext& ctx, std::uint64_t safety_limit,
                       std::uint64_t* steps = nullptr);

struct ClassBasics {
  SpincClass spinc;
  std::vector<CharVector> basics;  // initial vectors, sorted
  std::vector<CharVector> finals;  // terminal L for each basic, same order
  std::uint64_t overflow = 0;
  std::uint64_t box_count = 0;
};

struct BasicSet {
  std::vector<ClassBasics> classes;
  std::size_t canonical = 0;
  std::uint64_t box_size = 0;

  std::uint64_t total_basic() const;
};

struct EngineOptions {
  std::uint64_t budget = default_box_budget();
  unsigned threads = 1;
};

BasicSet basic_vectors(const QFormContext& ctx, const EngineOptions& options = {});

/// Exactly one basic vector in the class of canonical_char. Stops as soon as
/// a second one is found.
bool is_rational(const QFormContext& ctx, const EngineOptions& options = {});

struct ArStatus {
  bool found = false;
  std::size_t vertex = 0;
  std::int64_t decrease = 0;
  std::uint64_t bound = 0;
};

/// |V| + sum |m(v)|.
std::uint64_t default_ar_bound(const QFormContext& ctx);

/// Scans decreases delta = 1..bound (outer) over vertices in file order
/// (inner) and reports the first graph found rational. Candidates whose box
/// exceeds the budget are skipped.
ArStatus ar_status(const QFormContext& ctx, std::uint64_t bound = 0, const EngineOptions& options = {});

struct LSpaceVerdict {
  bool lspace = false;
  bool certified = false;
  std::uint64_t basic = 0;
  std::uint64_t spinc = 0;
  ArStatus ar;
};

LSpaceVerdict is_lspace(const QFormContext& ctx, const BasicSet& basics, const ArStatus& ar);
LSpaceVerdict is_lspace(const QFormContext& ctx, const EngineOptions& options = {}, std::uint64_t ar_bound = 0);

struct DInvariant {
  SpincClass spinc;
  Rational d;  // d(Y(G), t)
  Rational d_reversed() const { return -d; }
};

/// d(Y(G), t) = max over basic K in t of (K^2 + |G|) / 4.
std::vector<DInvariant> d_invariants(const QFormContext& ctx, const BasicSet& basics);
std::vector<DInvariant> d_invariants(const QFormContext& ctx, const EngineOptions& options = {});

/// Sorted multiset of the d-values.
std::vector<Rational> d_multiset(const std::vector<DInvariant>& ds);

/// Correction terms of lens spaces by the classical recursion
///   d(-L(1,0), 0) = 0
///   d(-L(p,q), i) = ((2i+1-p-q)^2 - pq) / (4pq) - d(-L(q, p mod q), i mod q).
/// With this normalisation the single -p vertex bounds L(p,1) and
/// d(Y(G), t) = -lens_d_oracle(p, q, i) for the chain with p/q = [a1,...,an].
/// Throws std::invalid_argument unless 0 < q < p (or p == 1, q == 0),
/// gcd(p,q) == 1 and 0 <= i < p.
Rational lens_d_oracle(std::int64_t p, std::int64_t q, std::int64_t i);

}  // namespace plumb
