#pragma once

// Small-graph census: free trees, negative-definite weightings, per-graph
// records, and the integral-homology-sphere classification checks.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plumb/forest.hpp"
#include "plumb/numeric.hpp"

namespace plumb {

inline constexpr std::uint64_t kCensusBoxBudget = 1'000'000;

struct UnweightedTree {
  std::size_t n = 0;
  std::vector<Edge> edges;
};

/// One tree per isomorphism class on n vertices (1 <= n <= 12), sorted by
/// shape code. Built by attaching a leaf to every vertex of every tree on
/// n-1 vertices and deduplicating.
std::vector<UnweightedTree> enumerate_trees(std::size_t n);

struct WeightedOptions {
  std::uint64_t budget = 200'000'000;  // raw weight assignments examined
  bool minimal_only = false;
};

/// Streams every weighting from {wmin..-1} of every tree on n vertices that
/// is negative definite, once per isomorphism class. The weights span is only
/// valid during the callback.
using WeightedVisitor = std::function<void(const UnweightedTree& tree, std::span<const std::int64_t> weights,
                                           const std::string& code, const Int& det)>;
void for_each_weighted(std::size_t n, std::int64_t wmin, const WeightedOptions& options, const WeightedVisitor& visit);

/// All weightings from {wmin..-1} of every tree on n vertices that are
/// negative definite, one per isomorphism class, sorted by canonical code.
std::vector<PlumbingForest> enumerate_weighted(std::size_t n, std::int64_t wmin, const WeightedOptions& options = {});

struct CensusRecord {
  std::string code;
  std::size_t n = 0;
  std::vector<std::int64_t> weights;
  bool negdef = false;
  Int det;
  std::uint64_t spinc = 0;
  std::uint64_t basic = 0;
  bool rational = false;
  bool lspace = false;
  bool certified = false;
  bool minimal = false;
  std::vector<Rational> d;  // sorted
};

/// Classifies one negative-definite forest. Throws BudgetExceeded above the
/// box budget.
CensusRecord census_record(const PlumbingForest& forest, std::uint64_t budget = kCensusBoxBudget);

enum class CensusFilter { Zhs, Rational, NonRational, LSpace, NonLSpace, Minimal, Chain };

/// Parses "zhs", "rational", "nonrational", "lspace", "nonlspace", "minimal", "chain".
std::optional<CensusFilter> parse_filter(const std::string& name);

struct CensusOptions {
  std::size_t max_vertices = 4;
  std::int64_t min_weight = -3;
  std::vector<CensusFilter> filters;
  std::uint64_t box_budget = kCensusBoxBudget;
};

struct CensusResult {
  std::vector<CensusRecord> records;  // sorted by code
  std::uint64_t scanned = 0;
  std::uint64_t skipped_budget = 0;
};

CensusResult census_scan(const CensusOptions& options);

inline constexpr const char* kCensusSchema = "plumb-census";
inline constexpr int kCensusSchemaVersion = 1;

/// Header line followed by one JSON object per record.
void write_census_jsonl(std::ostream& out, const CensusResult& result);

struct E8Report {
  bool passed = false;
  std::size_t max_vertices = 0;
  std::uint64_t trees_scanned = 0;
  std::uint64_t negdef = 0;
  std::vector<std::string> unimodular;  // codes with |det| = 1
  std::string e8_code;
  std::string message;
};

/// Requires max_vertices >= 8.
E8Report verify_e8_unique(std::size_t max_vertices);

struct ClassificationReport {
  bool passed = false;
  std::size_t max_vertices = 0;
  std::int64_t min_weight = 0;
  std::uint64_t graphs = 0;          // minimal connected negative-definite trees
  std::uint64_t unimodular = 0;      // |det| == 1
  std::uint64_t rational_unimodular = 0;
  std::uint64_t case1_checked = 0;   // minimal graphs with a -1 vertex
  std::uint64_t case2_checked = 0;   // no -1, some weight <= -3, |det| == 1
  std::uint64_t skipped_budget = 0;
  std::vector<std::string> counterexamples;
  std::string message;
};

ClassificationReport verify_classification(std::size_t max_vertices, std::int64_t min_weight,
                                           std::uint64_t box_budget = kCensusBoxBudget);

}  // namespace plumb
