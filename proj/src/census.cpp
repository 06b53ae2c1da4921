#include "plumb/census.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_set>

#include "plumb/engine.hpp"
#include "plumb/errors.hpp"
#include "plumb/report.hpp"

namespace plumb {

// --- unweighted trees -------------------------------------------------------------

namespace {

PlumbingForest shape_forest(const UnweightedTree& t) {
  std::vector<std::int64_t> w(t.n, -2);
  return PlumbingForest::from_weights(w, t.edges);
}

}  // namespace

std::vector<UnweightedTree> enumerate_trees(std::size_t n) {
  if (n < 1 || n > 12) throw std::invalid_argument("enumerate_trees: n must lie in 1..12");
  std::vector<UnweightedTree> level{UnweightedTree{1, {}}};
  for (std::size_t size = 2; size <= n; ++size) {
    std::map<std::string, UnweightedTree> next;
    for (const auto& t : level)
      for (std::size_t v = 0; v < t.n; ++v) {
        UnweightedTree grown{size, t.edges};
        grown.edges.emplace_back(v, size - 1);
        next.try_emplace(shape_code(shape_forest(grown)), std::move(grown));
      }
    level.clear();
    for (auto& [code, t] : next) level.push_back(std::move(t));
  }
  return level;
}

// --- weighted trees ---------------------------------------------------------------

namespace {

struct Overflow {};

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}

// Rooted tree in leaf-first order. D(v) is the determinant of the subtree
// below v and E(v) = prod D(children), the subtree with v deleted; the
// elimination pivot at v is D(v)/E(v).
struct TreeShape {
  std::vector<std::size_t> order;   // children before parents
  std::vector<std::vector<std::size_t>> children;
  std::vector<std::vector<std::size_t>> adjacency;
  std::size_t root = 0;

  explicit TreeShape(const UnweightedTree& t) : children(t.n), adjacency(t.n) {
    for (const auto& [a, b] : t.edges) {
      adjacency[a].push_back(b);
      adjacency[b].push_back(a);
    }
    for (auto& a : adjacency) std::sort(a.begin(), a.end());
    std::vector<std::size_t> pre{0}, parent(t.n, t.n);
    std::vector<bool> seen(t.n, false);
    seen[0] = true;
    for (std::size_t i = 0; i < pre.size(); ++i)
      for (std::size_t w : adjacency[pre[i]])
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = pre[i];
          children[pre[i]].push_back(w);
          pre.push_back(w);
        }
    order.assign(pre.rbegin(), pre.rend());
  }

  // Negative definite iff every pivot D/E is negative; det Q = D(root).
  template <typename T, typename Mul, typename Add>
  std::optional<T> negdef_det(std::span<const std::int64_t> w, Mul mulf, Add addf) const {
    std::vector<T> d(w.size()), e(w.size());
    for (std::size_t v : order) {
      T prod = 1, sum = 0;
      for (std::size_t c : children[v]) {
        sum = addf(mulf(sum, d[c]), mulf(e[c], prod));
        prod = mulf(prod, d[c]);
      }
      d[v] = addf(mulf(T(w[v]), prod), T(-sum));
      e[v] = prod;
      // Pivot sign = sign(D) * sign(E).
      if ((d[v] < 0) == (e[v] < 0) || d[v] == 0) return std::nullopt;
    }
    return d[order.back()];
  }

  std::optional<Int> negdef_det(std::span<const std::int64_t> w) const {
    try {
      auto r = negdef_det<std::int64_t>(w, mul, add);
      if (!r) return std::nullopt;
      return Int(*r);
    } catch (const Overflow&) {
      return negdef_det<Int>(
          w, [](const Int& a, const Int& b) { return Int(a * b); }, [](const Int& a, const Int& b) { return Int(a + b); });
    }
  }
};

bool minimal_weighting(const TreeShape& shape, std::span<const std::int64_t> w) {
  for (std::size_t v = 0; v < w.size(); ++v)
    if (w[v] == -1 && shape.adjacency[v].size() <= 2) return false;
  return true;
}

Int power(std::int64_t base, std::size_t exp) {
  Int r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

void for_each_weighted(std::size_t n, std::int64_t wmin, const WeightedOptions& options, const WeightedVisitor& visit) {
  if (wmin > -1) throw std::invalid_argument("enumerate_weighted: the most negative weight must be <= -1");
  const auto trees = enumerate_trees(n);
  const Int raw = power(-wmin, n) * trees.size();
  if (raw > options.budget)
    throw BudgetExceeded(raw.str() + " weight assignments exceed the budget of " + std::to_string(options.budget));
  for (const auto& tree : trees) {
    const TreeShape shape(tree);
    std::unordered_set<std::string> seen;
    std::vector<std::int64_t> w(n, wmin);
    for (;;) {
      if (!options.minimal_only || minimal_weighting(shape, w)) {
        if (auto det = shape.negdef_det(w)) {
          std::string code = canonical_code(w, shape.adjacency);
          if (seen.insert(code).second) visit(tree, w, code, *det);
        }
      }
      std::size_t v = n;
      while (v > 0 && w[v - 1] == -1) w[--v] = wmin;
      if (v == 0) break;
      ++w[v - 1];
    }
  }
}

std::vector<PlumbingForest> enumerate_weighted(std::size_t n, std::int64_t wmin, const WeightedOptions& options) {
  std::vector<std::pair<std::string, PlumbingForest>> found;
  for_each_weighted(n, wmin, options,
                    [&](const UnweightedTree& t, std::span<const std::int64_t> w, const std::string& code, const Int&) {
                      found.emplace_back(code, PlumbingForest::from_weights(w, t.edges));
                    });
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<PlumbingForest> out;
  out.reserve(found.size());
  for (auto& [code, f] : found) out.push_back(std::move(f));
  return out;
}

// --- records ----------------------------------------------------------------------

CensusRecord census_record(const PlumbingForest& forest, std::uint64_t budget) {
  CensusRecord r;
  r.code = canonical_code(forest);
  r.n = forest.size();
  r.weights = forest.weights();
  r.negdef = is_negative_definite(forest);
  r.det = determinant(forest);
  r.minimal = is_minimal(forest);
  if (!r.negdef) return r;
  const QFormContext ctx(forest);
  const EngineOptions opts{budget, 1};
  const BasicSet basics = basic_vectors(ctx, opts);
  r.spinc = basics.classes.size();
  r.basic = basics.total_basic();
  r.rational = basics.classes[basics.canonical].basics.size() == 1;
  const LSpaceVerdict v = is_lspace(ctx, basics, ar_status(ctx, 0, opts));
  r.lspace = v.lspace;
  r.certified = v.certified;
  r.d = d_multiset(d_invariants(ctx, basics));
  return r;
}

std::optional<CensusFilter> parse_filter(const std::string& name) {
  static const std::map<std::string, CensusFilter> table{
      {"zhs", CensusFilter::Zhs},         {"rational", CensusFilter::Rational},
      {"nonrational", CensusFilter::NonRational}, {"lspace", CensusFilter::LSpace},
      {"nonlspace", CensusFilter::NonLSpace},     {"minimal", CensusFilter::Minimal},
      {"chain", CensusFilter::Chain}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

namespace {

bool is_chain(const UnweightedTree& t) {
  std::vector<int> degree(t.n, 0);
  for (const auto& [a, b] : t.edges) {
    if (++degree[a] > 2 || ++degree[b] > 2) return false;
  }
  return true;
}

bool accepts(const CensusRecord& r, CensusFilter f) {
  switch (f) {
    case CensusFilter::Zhs: return abs(r.det) == 1;
    case CensusFilter::Rational: return r.rational;
    case CensusFilter::NonRational: return !r.rational;
    case CensusFilter::LSpace: return r.lspace;
    case CensusFilter::NonLSpace: return !r.lspace;
    case CensusFilter::Minimal: return r.minimal;
    case CensusFilter::Chain: return true;  // checked on the shape
  }
  return true;
}

}  // namespace

CensusResult census_scan(const CensusOptions& options) {
  const bool chains_only =
      std::find(options.filters.begin(), options.filters.end(), CensusFilter::Chain) != options.filters.end();
  const bool zhs_only =
      std::find(options.filters.begin(), options.filters.end(), CensusFilter::Zhs) != options.filters.end();
  const bool minimal_only =
      std::find(options.filters.begin(), options.filters.end(), CensusFilter::Minimal) != options.filters.end();
  CensusResult result;
  for (std::size_t n = 1; n <= options.max_vertices; ++n) {
    WeightedOptions wopts;
    wopts.minimal_only = minimal_only;
    for_each_weighted(n, options.min_weight, wopts,
                      [&](const UnweightedTree& t, std::span<const std::int64_t> w, const std::string&, const Int& det) {
                        if (chains_only && !is_chain(t)) return;
                        if (zhs_only && abs(det) != 1) return;
                        ++result.scanned;
                        CensusRecord r;
                        try {
                          r = census_record(PlumbingForest::from_weights(w, t.edges), options.box_budget);
                        } catch (const BudgetExceeded&) {
                          ++result.skipped_budget;
                          return;
                        }
                        for (CensusFilter f : options.filters)
                          if (!accepts(r, f)) return;
                        result.records.push_back(std::move(r));
                      });
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const CensusRecord& a, const CensusRecord& b) { return a.code < b.code; });
  return result;
}

void write_census_jsonl(std::ostream& out, const CensusResult& result) {
  out << Json{{"schema", kCensusSchema}, {"version", kCensusSchemaVersion}}.dump() << '\n';
  for (const auto& r : result.records) out << census_record_json(r).dump() << '\n';
}

// --- classification checks --------------------------------------------------------

E8Report verify_e8_unique(std::size_t max_vertices) {
  if (max_vertices < 8) throw std::invalid_argument("verify_e8_unique: max_vertices must be at least 8");
  E8Report rep;
  rep.max_vertices = max_vertices;
  rep.e8_code = canonical_code(e8_forest());
  for (std::size_t n = 1; n <= max_vertices; ++n)
    for (const auto& tree : enumerate_trees(n)) {
      ++rep.trees_scanned;
      const TreeShape shape(tree);
      const std::vector<std::int64_t> w(n, -2);
      auto det = shape.negdef_det(w);
      if (!det) continue;
      ++rep.negdef;
      if (abs(*det) == 1) rep.unimodular.push_back(canonical_code(w, shape.adjacency));
    }
  rep.passed = rep.unimodular.size() == 1 && rep.unimodular.front() == rep.e8_code;
  if (rep.passed) {
    rep.message = "E8 is the only negative-definite all -2 tree with |det| = 1 on at most " +
                  std::to_string(max_vertices) + " vertices";
  } else if (rep.unimodular.empty()) {
    rep.message = "no unimodular all -2 tree found";
  } else {
    rep.message = "unimodular all -2 trees:";
    for (const auto& c : rep.unimodular) rep.message += " " + c;
  }
  return rep;
}

ClassificationReport verify_classification(std::size_t max_vertices, std::int64_t min_weight,
                                           std::uint64_t box_budget) {
  ClassificationReport rep;
  rep.max_vertices = max_vertices;
  rep.min_weight = min_weight;
  const std::string e8 = canonical_code(e8_forest());
  WeightedOptions wopts;
  wopts.minimal_only = true;
  for (std::size_t n = 1; n <= max_vertices; ++n) {
    for_each_weighted(
        n, min_weight, wopts,
        [&](const UnweightedTree& t, std::span<const std::int64_t> w, const std::string& code, const Int& det) {
          ++rep.graphs;
          const bool unimodular = abs(det) == 1;
          const bool has_minus_one = std::find(w.begin(), w.end(), -1) != w.end();
          const bool has_low = std::any_of(w.begin(), w.end(), [](std::int64_t x) { return x <= -3; });
          if (!unimodular && !has_minus_one) return;
          bool rational = false;
          try {
            rational = is_rational(QFormContext(PlumbingForest::from_weights(w, t.edges)), {box_budget, 1});
          } catch (const BudgetExceeded&) {
            ++rep.skipped_budget;
            return;
          }
          if (unimodular) {
            ++rep.unimodular;
            if (rational) {
              ++rep.rational_unimodular;
              if (code != e8) rep.counterexamples.push_back("(a) rational with |det| = 1: " + code);
            }
            if (!has_minus_one && has_low) {
              ++rep.case2_checked;
              if (rational) rep.counterexamples.push_back("(b) rational, no -1, a weight <= -3, |det| = 1: " + code);
            }
          }
          if (has_minus_one) {
            ++rep.case1_checked;
            if (rational) rep.counterexamples.push_back("(c) rational with a -1 vertex: " + code);
          }
        });
  }
  const bool e8_seen = max_vertices < 8 || min_weight > -2 || rep.rational_unimodular >= 1;
  rep.passed = rep.counterexamples.empty() && rep.skipped_budget == 0 && e8_seen;
  if (rep.passed) {
    rep.message = "all checks hold on " + std::to_string(rep.graphs) + " minimal trees";
  } else if (!rep.counterexamples.empty()) {
    rep.message = std::to_string(rep.counterexamples.size()) + " counterexample(s), first: " + rep.counterexamples.front();
  } else if (rep.skipped_budget > 0) {
    rep.message = std::to_string(rep.skipped_budget) + " graph(s) exceeded the box budget; the scan is incomplete";
  } else {
    rep.message = "E8 was not found rational";
  }
  return rep;
}

}  // namespace plumb
