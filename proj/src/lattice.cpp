#include "plumb/lattice.hpp"

#include <cstdlib>
#include <sstream>

#include "plumb/errors.hpp"

namespace plumb {

namespace {

constexpr std::int64_t kFastLimit = std::int64_t{1} << 40;

inline std::int64_t mod_floor(__int128 a, std::int64_t m) {
  __int128 r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace

std::uint64_t default_box_budget() {
  if (const char* env = std::getenv("PLUMB_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultBoxBudget;
}

std::string CharVector::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < k_.size(); ++i) os << (i ? "," : "") << k_[i];
  os << ')';
  return os.str();
}

std::size_t CharVectorHash::operator()(const CharVector& k) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (std::int64_t x : k.values()) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// --- QFormContext -------------------------------------------------------------

QFormContext::QFormContext(PlumbingForest forest) : forest_(std::move(forest)), weights_(forest_.weights()) {
  adj_ = plumb::adjugate(IntMatrix::from_rows(IntersectionMatrix(forest_).rows()));
  negdef_ = is_negative_definite(forest_);
  const std::size_t n = size();
  if (abs(adj_.det) < kFastLimit) {
    fast_ = true;
    adj64_.resize(n * n);
    for (std::size_t i = 0; i < n && fast_; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Int& e = adj_.adj(i, j);
        if (abs(e) >= kFastLimit) {
          fast_ = false;
          break;
        }
        adj64_[i * n + j] = static_cast<std::int64_t>(e);
      }
    det64_ = static_cast<std::int64_t>(adj_.det);
  }
  if (!fast_) adj64_.clear();
}

std::int64_t QFormContext::q(std::size_t i, std::size_t j) const {
  if (i == j) return weights_[i];
  return forest_.adjacent(i, j) ? 1 : 0;
}

Int QFormContext::box_size() const {
  Int p = 1;
  for (std::int64_t w : weights_) p *= Int(w < 0 ? -w : w);
  return p;
}

void QFormContext::require_negative_definite(const char* who) const {
  if (!negdef_) throw PreconditionError(std::string(who) + ": the intersection form is not negative definite");
}

// --- box ------------------------------------------------------------------------

bool is_characteristic(const CharVector& k, const QFormContext& ctx) {
  if (k.size() != ctx.size()) return false;
  for (std::size_t v = 0; v < k.size(); ++v)
    if (((k[v] - ctx.weight(v)) % 2) != 0) return false;
  return true;
}

bool in_part_box(std::span<const std::int64_t> k, const QFormContext& ctx) {
  if (k.size() != ctx.size()) return false;
  for (std::size_t v = 0; v < k.size(); ++v) {
    const std::int64_t m = ctx.weight(v);
    if (k[v] < m + 2 || k[v] > -m || ((k[v] - m) % 2) != 0) return false;
  }
  return true;
}

bool in_other_part_box(std::span<const std::int64_t> k, const QFormContext& ctx) {
  if (k.size() != ctx.size()) return false;
  for (std::size_t v = 0; v < k.size(); ++v) {
    const std::int64_t m = ctx.weight(v);
    if (k[v] < m || k[v] > -m - 2 || ((k[v] - m) % 2) != 0) return false;
  }
  return true;
}

std::uint64_t checked_box_size(const QFormContext& ctx, std::uint64_t budget) {
  Int size = ctx.box_size();
  if (size > budget)
    throw BudgetExceeded("box of " + size.str() + " characteristic vectors exceeds the budget of " +
                         std::to_string(budget));
  return static_cast<std::uint64_t>(size);
}

BoxCursor::BoxCursor(const QFormContext& ctx) {
  const std::size_t n = ctx.size();
  for (std::size_t v = 0; v < n; ++v) {
    if (ctx.weight(v) >= 0) throw PreconditionError("box enumeration needs negative weights");
    low_.push_back(ctx.weight(v) + 2);
    high_.push_back(-ctx.weight(v));
  }
  k_ = low_;
}

bool BoxCursor::next() {
  std::size_t v = k_.size();
  while (v > 0) {
    --v;
    if (k_[v] + 2 <= high_[v]) {
      k_[v] += 2;
      return true;
    }
    k_[v] = low_[v];
  }
  return false;
}

void BoxCursor::seek(std::uint64_t index) {
  std::size_t v = k_.size();
  while (v > 0) {
    --v;
    const std::uint64_t radix = static_cast<std::uint64_t>((high_[v] - low_[v]) / 2 + 1);
    k_[v] = low_[v] + 2 * static_cast<std::int64_t>(index % radix);
    index /= radix;
  }
}

void for_each_box_vector(const QFormContext& ctx, std::uint64_t budget,
                         const std::function<void(std::span<const std::int64_t>)>& visit) {
  checked_box_size(ctx, budget);
  BoxCursor cursor(ctx);
  do {
    visit(cursor.current());
  } while (cursor.next());
}

std::vector<CharVector> char_box(const QFormContext& ctx, std::uint64_t budget) {
  std::vector<CharVector> out;
  out.reserve(checked_box_size(ctx, budget));
  for_each_box_vector(ctx, budget, [&](std::span<const std::int64_t> k) {
    out.emplace_back(std::vector<std::int64_t>(k.begin(), k.end()));
  });
  return out;
}

// --- lattice operations -----------------------------------------------------------

CharVector add_pd(const CharVector& k, std::size_t v, const QFormContext& ctx) {
  CharVector out = k;
  out[v] += 2 * ctx.weight(v);
  for (std::size_t w : ctx.neighbors(v)) out[w] += 2;
  return out;
}

std::optional<std::vector<Int>> pd_difference(const CharVector& k1, const CharVector& k2, const QFormContext& ctx) {
  if (k1.size() != ctx.size() || k2.size() != ctx.size()) throw std::invalid_argument("dimension mismatch");
  if (!ctx.nondegenerate()) throw PreconditionError("pd_difference: degenerate form");
  std::vector<Int> half(ctx.size());
  for (std::size_t v = 0; v < ctx.size(); ++v) {
    std::int64_t diff = k2[v] - k1[v];
    if (diff % 2 != 0) return std::nullopt;
    half[v] = diff / 2;
  }
  const auto& adj = ctx.adjugate();
  std::vector<Int> x(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < ctx.size(); ++j) s += adj(i, j) * half[j];
    if (s % ctx.det() != 0) return std::nullopt;
    x[i] = s / ctx.det();
  }
  return x;
}

bool same_spinc(const CharVector& k1, const CharVector& k2, const QFormContext& ctx) {
  return pd_difference(k1, k2, ctx).has_value();
}

CharVector canonical_char(const QFormContext& ctx) {
  std::vector<std::int64_t> k(ctx.size());
  for (std::size_t v = 0; v < ctx.size(); ++v) k[v] = ctx.weight(v) + 2;
  return CharVector(std::move(k));
}

Int k_square_scaled(std::span<const std::int64_t> k, const QFormContext& ctx) {
  const std::size_t n = ctx.size();
  Int s = 0;
  if (ctx.has_fast_path()) {
    // |adj| < 2^40 and modest |k| keep each row sum inside 128 bits.
    for (std::size_t i = 0; i < n; ++i) {
      if (k[i] == 0) continue;
      __int128 row = 0;
      for (std::size_t j = 0; j < n; ++j) row += static_cast<__int128>(ctx.adj64(i, j)) * k[j];
      s += Int(row) * k[i];
    }
  } else {
    const auto& adj = ctx.adjugate();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += Int(k[i]) * adj(i, j) * Int(k[j]);
  }
  // K^2 = s / det; scale by |det|.
  return ctx.det() < 0 ? Int(-s) : s;
}

Rational k_square(const CharVector& k, const QFormContext& ctx) {
  if (!ctx.nondegenerate()) throw PreconditionError("k_square: degenerate form");
  return ratio(k_square_scaled(k.values(), ctx), ctx.abs_det());
}

CharVector conjugate(const CharVector& k) {
  CharVector out = k;
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = -out[v];
  return out;
}

// --- Spin^c classes ---------------------------------------------------------------

SpincKeyer::SpincKeyer(const QFormContext& ctx)
    : n_(ctx.size()), modulus_(0) {
  const CharVector can = canonical_char(ctx);
  canonical_.assign(can.values().begin(), can.values().end());
  if (!ctx.has_fast_path() || !ctx.nondegenerate())
    throw BudgetExceeded("intersection form too large for Spin^c classification");
  modulus_ = ctx.det64() < 0 ? -ctx.det64() : ctx.det64();
  adj_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) adj_[i * n_ + j] = ctx.adj64(i, j);
}

std::vector<std::int64_t> SpincKeyer::key(std::span<const std::int64_t> k) const {
  std::vector<std::int64_t> out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    __int128 s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += static_cast<__int128>(adj_[i * n_ + j]) * ((k[j] - canonical_[j]) / 2);
    out[i] = mod_floor(s, modulus_);
  }
  return out;
}

std::optional<std::size_t> SpincPartition::class_of(std::span<const std::int64_t> k) const {
  auto it = index_by_key.find(keyer->key(k));
  if (it == index_by_key.end()) return std::nullopt;
  return it->second;
}

SpincPartition spinc_partition(const QFormContext& ctx, std::uint64_t budget) {
  ctx.require_negative_definite("spinc_classes");
  checked_box_size(ctx, budget);
  SpincPartition part;
  part.keyer = std::make_shared<SpincKeyer>(ctx);
  // Box order is lexicographic, so first sightings are the smallest representatives.
  for_each_box_vector(ctx, budget, [&](std::span<const std::int64_t> k) {
    auto key = part.keyer->key(k);
    auto [it, inserted] = part.index_by_key.emplace(std::move(key), part.classes.size());
    if (inserted) {
      part.classes.push_back({CharVector(std::vector<std::int64_t>(k.begin(), k.end())), part.classes.size()});
      part.box_counts.push_back(0);
    }
    ++part.box_counts[it->second];
  });
  auto can = part.class_of(canonical_char(ctx).values());
  part.canonical = can.value();
  return part;
}

std::vector<SpincClass> spinc_classes(const QFormContext& ctx, std::uint64_t budget) {
  return spinc_partition(ctx, budget).classes;
}

}  // namespace plumb
