#pragma once

// Characteristic vectors in pairing coordinates k_v = <K, v>, the box of
// initial vectors, Spin^c orbits and the exact square K^2.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plumb/forest.hpp"
#include "plumb/linalg.hpp"
#include "plumb/numeric.hpp"

namespace plumb {

inline constexpr std::uint64_t kDefaultBoxBudget = 10'000'000;

/// Reads PLUMB_BUDGET from the environment, else kDefaultBoxBudget.
std::uint64_t default_box_budget();

class CharVector {
 public:
  CharVector() = default;
  explicit CharVector(std::vector<std::int64_t> k) : k_(std::move(k)) {}
  CharVector(std::initializer_list<std::int64_t> k) : k_(k) {}

  std::size_t size() const noexcept { return k_.size(); }
  std::int64_t operator[](std::size_t v) const { return k_[v]; }
  std::int64_t& operator[](std::size_t v) { return k_[v]; }
  std::span<const std::int64_t> values() const noexcept { return k_; }
  std::span<std::int64_t> values() noexcept { return k_; }

  std::string str() const;

  friend auto operator<=>(const CharVector&, const CharVector&) = default;
  friend bool operator==(const CharVector&, const CharVector&) = default;

 private:
  std::vector<std::int64_t> k_;
};

struct CharVectorHash {
  std::size_t operator()(const CharVector& k) const noexcept;
};

/// Read-only view of a forest's intersection form together with its exact
/// adjugate. Shareable across threads after construction.
class QFormContext {
 public:
  explicit QFormContext(PlumbingForest forest);

  const PlumbingForest& forest() const noexcept { return forest_; }
  std::size_t size() const noexcept { return forest_.size(); }
  std::int64_t weight(std::size_t v) const { return weights_[v]; }
  std::span<const std::int64_t> weights() const noexcept { return weights_; }
  std::span<const std::size_t> neighbors(std::size_t v) const { return forest_.neighbors(v); }
  std::int64_t q(std::size_t i, std::size_t j) const;

  const Int& det() const noexcept { return adj_.det; }
  Int abs_det() const { return abs(adj_.det); }
  const IntMatrix& adjugate() const noexcept { return adj_.adj; }
  bool nondegenerate() const noexcept { return adj_.det != 0; }
  bool negative_definite() const noexcept { return negdef_; }

  /// prod |m(v)|, the number of PartBox vectors.
  Int box_size() const;

  /// Throws PreconditionError unless the form is negative definite.
  void require_negative_definite(const char* who) const;

  /// Small-int copies of det and adj, present when every entry is < 2^40.
  bool has_fast_path() const noexcept { return fast_; }
  std::int64_t det64() const noexcept { return det64_; }
  std::int64_t adj64(std::size_t i, std::size_t j) const { return adj64_[i * size() + j]; }

 private:
  PlumbingForest forest_;
  std::vector<std::int64_t> weights_;
  Adjugate adj_;
  bool negdef_ = false;
  bool fast_ = false;
  std::int64_t det64_ = 0;
  std::vector<std::int64_t> adj64_;
};

/// True when k_v = m(v) (mod 2) everywhere.
bool is_characteristic(const CharVector& k, const QFormContext& ctx);

/// m(v)+2 <= k_v <= -m(v) for every v.
bool in_part_box(std::span<const std::int64_t> k, const QFormContext& ctx);
/// m(v) <= k_v <= -m(v)-2 for every v.
bool in_other_part_box(std::span<const std::int64_t> k, const QFormContext& ctx);

/// Throws BudgetExceeded when prod |m(v)| exceeds the budget.
std::uint64_t checked_box_size(const QFormContext& ctx, std::uint64_t budget);

/// Odometer over the PartBox in lexicographic order (last coordinate fastest).
class BoxCursor {
 public:
  explicit BoxCursor(const QFormContext& ctx);
  std::span<const std::int64_t> current() const noexcept { return k_; }
  /// Advances; false once the last vector has been passed.
  bool next();
  /// Jumps to the vector with the given lexicographic rank.
  void seek(std::uint64_t index);

 private:
  std::vector<std::int64_t> low_;
  std::vector<std::int64_t> high_;
  std::vector<std::int64_t> k_;
};

/// Visits the PartBox in lexicographic order. The span is only valid during
/// the callback.
void for_each_box_vector(const QFormContext& ctx, std::uint64_t budget,
                         const std::function<void(std::span<const std::int64_t>)>& visit);

std::vector<CharVector> char_box(const QFormContext& ctx, std::uint64_t budget = default_box_budget());

/// k'_w = k_w + 2 Q[v][w].
CharVector add_pd(const CharVector& k, std::size_t v, const QFormContext& ctx);

/// Q x = (k2 - k1)/2 has an integral solution.
bool same_spinc(const CharVector& k1, const CharVector& k2, const QFormContext& ctx);

/// The integral x with Q x = (k2 - k1)/2, or nullopt when k1, k2 are in
/// different classes.
std::optional<std::vector<Int>> pd_difference(const CharVector& k1, const CharVector& k2, const QFormContext& ctx);

/// k_v = m(v) + 2.
CharVector canonical_char(const QFormContext& ctx);

/// K^2 = k^T Q^{-1} k.
Rational k_square(const CharVector& k, const QFormContext& ctx);

/// |det| * K^2 as an exact integer (K^2 has denominator dividing |det|).
Int k_square_scaled(std::span<const std::int64_t> k, const QFormContext& ctx);

CharVector conjugate(const CharVector& k);

/// Class invariant: adj * (k - k_can)/2 reduced mod |det|. Two characteristic
/// vectors share a Spin^c class iff their keys are equal.
/// Requires ctx.has_fast_path().
class SpincKeyer {
 public:
  explicit SpincKeyer(const QFormContext& ctx);
  std::vector<std::int64_t> key(std::span<const std::int64_t> k) const;

 private:
  std::size_t n_;
  std::int64_t modulus_;
  std::vector<std::int64_t> adj_;
  std::vector<std::int64_t> canonical_;
};

struct SpincClass {
  CharVector representative;  // lexicographically smallest box vector of the class
  std::size_t index = 0;
};

struct SpincPartition {
  std::vector<SpincClass> classes;
  std::vector<std::size_t> box_counts;  // box vectors per class
  std::size_t canonical = 0;            // index of the class of canonical_char

  /// Class index of a characteristic vector, nullopt if its class has no box vector.
  std::optional<std::size_t> class_of(std::span<const std::int64_t> k) const;

  std::shared_ptr<const SpincKeyer> keyer;
  std::map<std::vector<std::int64_t>, std::size_t> index_by_key;
};

SpincPartition spinc_partition(const QFormContext& ctx, std::uint64_t budget = default_box_budget());
std::vector<SpincClass> spinc_classes(const QFormContext& ctx, std::uint64_t budget = default_box_budget());

}  // namespace plumb
