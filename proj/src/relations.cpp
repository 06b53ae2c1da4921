#include "plumb/relations.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <unordered_map>

#include "plumb/ellipsoid.hpp"
#include "plumb/errors.hpp"

namespace plumb {

std::int64_t default_expansion(const QFormContext& ctx) { return 2 * static_cast<std::int64_t>(ctx.size()); }

std::int64_t step_weight(const CharVector& k, std::size_t v, const QFormContext& ctx) {
  return (k[v] + ctx.weight(v)) / 2;
}

Int path_weight(const CharVector& k1, const CharVector& k2, const QFormContext& ctx) {
  auto x = pd_difference(k1, k2, ctx);
  if (!x) throw PreconditionError("path_weight: the vectors lie in different Spin^c classes");
  Int lin = 0, quad = 0;
  for (std::size_t v = 0; v < ctx.size(); ++v) {
    lin += Int(k1[v]) * (*x)[v];
    quad += Int(ctx.weight(v)) * (*x)[v] * (*x)[v];
    for (std::size_t w : ctx.neighbors(v)) quad += (*x)[v] * (*x)[w];
  }
  return (lin + quad) / 2;
}

Rational state_degree(std::int64_t a, const CharVector& k, const QFormContext& ctx) {
  return Rational(2 * a) - (k_square(k, ctx) + Int(ctx.size())) / 4;
}

// --- minimal relations -------------------------------------------------------------

namespace {

bool in_expanded_box(std::span<const std::int64_t> k, const QFormContext& ctx, std::int64_t b) {
  for (std::size_t v = 0; v < k.size(); ++v) {
    const std::int64_t m = ctx.weight(v);
    if (k[v] < m + 2 - 2 * b || k[v] > -m + 2 * b) return false;
  }
  return true;
}

}  // namespace

MinimalRelation minimal_relation(const CharVector& k1, const CharVector& k2, const QFormContext& ctx,
                                 std::int64_t expansion) {
  ctx.require_negative_definite("minimal_relation");
  if (!same_spinc(k1, k2, ctx)) throw PreconditionError("minimal_relation: the vectors lie in different Spin^c classes");
  const std::int64_t b = expansion < 0 ? default_expansion(ctx) : expansion;
  if (!in_expanded_box(k1.values(), ctx, b) || !in_expanded_box(k2.values(), ctx, b)) throw BoundExceeded(b);

  // Bottleneck search: the exponent along a path from K1 is n + pw, pw the
  // running step-weight sum, so the least admissible n over a path is the
  // largest -pw met on it.
  struct Node {
    std::int64_t pw;
    std::int64_t cost;
    bool done;
  };
  std::unordered_map<CharVector, Node, CharVectorHash> nodes;
  using Entry = std::pair<std::int64_t, CharVector>;
  auto cmp = [](const Entry& a, const Entry& b) { return a.first > b.first; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(cmp);
  nodes.emplace(k1, Node{0, 0, false});
  queue.push({0, k1});
  const std::size_t n = ctx.size();
  while (!queue.empty()) {
    auto [cost, k] = queue.top();
    queue.pop();
    Node& node = nodes.at(k);
    if (node.done || cost != node.cost) continue;
    node.done = true;
    if (k == k2) return {k1, k2, Int(cost), Int(cost + node.pw)};
    const std::int64_t pw = node.pw;
    for (std::size_t v = 0; v < n; ++v) {
      for (int dir : {1, -1}) {
        CharVector next = k;
        next[v] += dir * 2 * ctx.weight(v);
        for (std::size_t w : ctx.neighbors(v)) next[w] += dir * 2;
        if (!in_expanded_box(next.values(), ctx, b)) continue;
        // Forward step from k adds n(k); a backward step removes n(next).
        const std::int64_t npw = dir > 0 ? pw + step_weight(k, v, ctx) : pw - step_weight(next, v, ctx);
        const std::int64_t ncost = std::max(cost, -npw);
        auto [it, inserted] = nodes.try_emplace(next, Node{npw, ncost, false});
        if (!inserted) {
          if (it->second.done || it->second.cost <= ncost) continue;
          it->second.cost = ncost;
        }
        queue.push({ncost, std::move(next)});
      }
    }
  }
  throw BoundExceeded(b);
}

// --- truncated equivalence classes -------------------------------------------------

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::uint64_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

// Offsets x are packed into one mixed-radix integer over the ellipsoid's
// bounding box; open addressing maps packed keys to cell indices.
class CellIndex {
 public:
  void reserve(std::size_t n) {
    std::size_t cap = 16;
    while (cap < 2 * n + 16) cap <<= 1;
    keys_.assign(cap, kEmpty);
    values_.assign(cap, 0);
    mask_ = cap - 1;
  }
  void insert(std::uint64_t key, std::uint32_t value) {
    if (2 * (size_ + 1) > keys_.size()) grow();
    place(key, value);
    ++size_;
  }
  std::optional<std::uint32_t> find(std::uint64_t key) const {
    for (std::size_t i = mix(key) & mask_;; i = (i + 1) & mask_) {
      if (keys_[i] == key) return values_[i];
      if (keys_[i] == kEmpty) return std::nullopt;
    }
  }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
  static std::size_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
  void place(std::uint64_t key, std::uint32_t value) {
    std::size_t i = mix(key) & mask_;
    while (keys_[i] != kEmpty) i = (i + 1) & mask_;
    keys_[i] = key;
    values_[i] = value;
  }
  void grow() {
    auto keys = std::move(keys_);
    auto values = std::move(values_);
    reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] != kEmpty) place(keys[i], values[i]);
  }
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> values_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
};

// With K = rep + 2 Q x, K^2 = rep^2 + 8 pw(x) and pw(x) = (<rep,x> + x.x)/2.
// The degree of U^a (x) K is deg(U^0 (x) rep) + 2 (a - pw(x)), so every
// level below is measured in units of 2 relative to U^0 (x) rep.
ClassTable class_table(const QFormContext& ctx, const ClassBasics& cls, const Rational& d, std::int64_t max_u,
                       std::uint64_t budget) {
  const std::size_t n = ctx.size();
  const CharVector& rep = cls.basics.empty() ? cls.spinc.representative : cls.basics.front();
  const Rational rep_degree = -(k_square(rep, ctx) + Int(n)) / 4;
  const Rational top = -d + 2 * max_u;
  const Rational span = (top - rep_degree) / 2;
  if (denominator(span) != 1) throw std::logic_error("degree window is not aligned with the class");
  const std::int64_t t = static_cast<std::int64_t>(numerator(span));

  const auto box = ellipsoid_box(ctx, rep, top * 4 + Int(n));
  std::vector<std::uint64_t> stride(n);
  {
    Int size = 1;
    for (std::size_t v = 0; v < n; ++v) {
      stride[v] = static_cast<std::uint64_t>(size);
      size *= Int(box[v].second - box[v].first + 1);
    }
    if (size >= (Int(1) << 62)) throw BudgetExceeded("degree window too wide to index");
  }

  std::vector<std::uint64_t> key;     // packed offset
  std::vector<std::int64_t> pw;       // path weight from rep
  std::vector<std::int64_t> kflat;    // pairing vectors, n per cell
  std::vector<std::uint64_t> base;    // id of U^0 (x) K
  std::uint64_t states = 0;
  for_each_char_in_ellipsoid(ctx, rep, top * 4 + Int(n), budget,
                             [&](std::span<const std::int64_t> x, std::span<const std::int64_t> k) {
                               std::int64_t lin = 0, quad = 0;
                               std::uint64_t packed = 0;
                               for (std::size_t v = 0; v < n; ++v) {
                                 lin += rep[v] * x[v];
                                 std::int64_t qx = ctx.weight(v) * x[v];
                                 for (std::size_t u : ctx.neighbors(v)) qx += x[u];
                                 quad += x[v] * qx;
                                 packed += static_cast<std::uint64_t>(x[v] - box[v].first) * stride[v];
                               }
                               const std::int64_t w = (lin + quad) / 2;
                               // U^0 (x) K lies in the window iff t + pw >= 0.
                               if (t + w < 0) return;
                               key.push_back(packed);
                               pw.push_back(w);
                               kflat.insert(kflat.end(), k.begin(), k.end());
                               base.push_back(states);
                               states += static_cast<std::uint64_t>(t + w) + 1;
                               if (states > budget)
                                 throw BudgetExceeded("truncated state space exceeds " + std::to_string(budget) +
                                                      " states");
                             });
  const std::size_t cells = key.size();
  CellIndex index;
  index.reserve(cells);
  for (std::size_t i = 0; i < cells; ++i) index.insert(key[i], static_cast<std::uint32_t>(i));

  ClassTable table;
  table.spinc = cls.spinc;
  table.states = states;
  UnionFind uf(states);
  for (std::size_t i = 0; i < cells; ++i) {
    const std::int64_t* k = &kflat[i * n];
    std::uint64_t rest = key[i];
    for (std::size_t v = n; v-- > 0;) {
      // Coordinate v of x, recovered from the packed key.
      const std::uint64_t digit = rest / stride[v];
      rest %= stride[v];
      if (static_cast<std::int64_t>(digit) + box[v].first + 1 > box[v].second) continue;
      auto j = index.find(key[i] + stride[v]);
      if (!j) continue;
      const std::int64_t step = (k[v] + ctx.weight(v)) / 2;
      // U^a (x) K ~ U^{a+step} (x) (K + 2PD[v]) must keep the degree.
      if (pw[*j] != pw[i] + step) ++table.degree_violations;
      const std::int64_t amax_i = t + pw[i], amax_j = t + pw[*j];
      const std::int64_t lo = std::max<std::int64_t>(0, -step);
      const std::int64_t hi = std::min(amax_i, amax_j - step);
      for (std::int64_t a = lo; a <= hi; ++a) {
        uf.unite(base[i] + static_cast<std::uint64_t>(a), base[*j] + static_cast<std::uint64_t>(a + step));
        ++table.edges;
      }
    }
  }
  if (cells == 0) return table;

  // Level of U^a (x) K relative to U^0 (x) rep is a - pw; the top is t.
  std::int64_t bottom = t;
  for (std::size_t i = 0; i < cells; ++i) bottom = std::min(bottom, -pw[i]);
  const std::size_t slots = static_cast<std::size_t>(t - bottom) + 1;
  std::vector<std::uint64_t> count(slots, 0);
  for (std::size_t i = 0; i < cells; ++i)
    for (std::int64_t a = 0; a <= t + pw[i]; ++a) {
      const std::uint64_t id = base[i] + static_cast<std::uint64_t>(a);
      if (uf.find(id) == id) ++count[static_cast<std::size_t>(a - pw[i] - bottom)];
    }
  table.bottom = rep_degree + 2 * bottom;
  for (std::size_t i = 0; i < slots; ++i) {
    table.counts.push_back({table.bottom + Rational(2 * static_cast<std::int64_t>(i)), count[i]});
    if (count[i] > 0) table.reduced_rank += count[i] - 1;
  }
  table.converged = count.back() == 1;
  return table;
}

}  // namespace

bool HfTable::converged() const {
  return std::all_of(classes.begin(), classes.end(), [](const ClassTable& c) { return c.converged; });
}

std::uint64_t HfTable::reduced_rank() const {
  std::uint64_t r = 0;
  for (const auto& c : classes) r += c.reduced_rank;
  return r;
}

HfTable truncated_classes(const QFormContext& ctx, const BasicSet& basics, const TruncationOptions& options) {
  ctx.require_negative_definite("truncated_classes");
  if (options.max_u < 0) throw std::invalid_argument("max_u must be non-negative");
  const auto ds = d_invariants(ctx, basics);
  HfTable table;
  table.max_u = options.max_u;
  for (std::size_t c = 0; c < basics.classes.size(); ++c)
    table.classes.push_back(class_table(ctx, basics.classes[c], ds[c].d, options.max_u, options.state_budget));
  return table;
}

HfTable hf_summary(const QFormContext& ctx, const BasicSet& basics, const TruncationOptions& options) {
  HfTable table = truncated_classes(ctx, basics, options);
  for (const auto& c : table.classes)
    if (!c.converged)
      throw Unconverged("class " + c.spinc.representative.str() + " has no tower at the top of the window (max U " +
                        std::to_string(options.max_u) + ")");
  return table;
}

}  // namespace plumb
