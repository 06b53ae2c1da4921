#include "plumb/engine.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "plumb/errors.hpp"
#include "plumb/parallel.hpp"

namespace plumb {

namespace {

std::runtime_error safety_breach(std::uint64_t limit) {
  return std::runtime_error("path sequence exceeded the safety limit of " + std::to_string(limit) +
                            " steps; the form is probably not negative definite");
}

void require_box(std::span<const std::int64_t> k, const QFormContext& ctx) {
  if (!in_part_box(k, ctx)) throw PreconditionError("run_path: the initial vector is not in the PartBox");
}

}  // namespace

std::uint64_t default_safety_limit(const QFormContext& ctx) {
  const Int size = ctx.box_size() * 10;
  const Int cap = Int(std::numeric_limits<std::uint64_t>::max());
  return static_cast<std::uint64_t>(size > cap ? cap : size);
}

TerminationResult run_path(const CharVector& k, const QFormContext& ctx, const Strategy& strategy,
                           std::uint64_t safety_limit) {
  ctx.require_negative_definite("run_path");
  require_box(k.values(), ctx);
  if (safety_limit == 0) safety_limit = default_safety_limit(ctx);
  const std::size_t n = ctx.size();
  TerminationResult result;
  result.final_vector = k;
  CharVector& cur = result.final_vector;
  std::vector<std::size_t> candidates;
  for (;;) {
    candidates.clear();
    for (std::size_t v = 0; v < n; ++v)
      if (cur[v] == -ctx.weight(v)) candidates.push_back(v);
    if (candidates.empty()) {
      result.outcome = Outcome::Basic;
      return result;
    }
    if (result.steps == safety_limit) throw safety_breach(safety_limit);
    std::size_t v = strategy ? strategy(candidates) : candidates.front();
    if (std::find(candidates.begin(), candidates.end(), v) == candidates.end())
      throw std::invalid_argument("run_path: strategy picked a vertex that is not a candidate");
    cur[v] += 2 * ctx.weight(v);
    ++result.steps;
    for (std::size_t w : ctx.neighbors(v)) {
      cur[w] += 2;
      if (cur[w] > -ctx.weight(w)) {
        result.outcome = Outcome::Overflow;
        result.witness = w;
        return result;
      }
    }
  }
}

bool run_path_in_place(std::span<std::int64_t> k, const QFormContext& ctx, std::uint64_t safety_limit,
                       std::uint64_t* steps) {
  const std::size_t n = ctx.size();
  std::uint64_t count = 0;
  for (;;) {
    std::size_t v = 0;
    while (v < n && k[v] != -ctx.weight(v)) ++v;
    if (v == n) break;
    if (count == safety_limit) throw safety_breach(safety_limit);
    ++count;
    k[v] += 2 * ctx.weight(v);
    for (std::size_t w : ctx.neighbors(v)) {
      k[w] += 2;
      if (k[w] > -ctx.weight(w)) {
        if (steps) *steps = count;
        return false;
      }
    }
  }
  if (steps) *steps = count;
  return true;
}

std::uint64_t BasicSet::total_basic() const {
  std::uint64_t total = 0;
  for (const auto& c : classes) total += c.basics.size();
  return total;
}

BasicSet basic_vectors(const QFormContext& ctx, const EngineOptions& options) {
  ctx.require_negative_definite("basic_vectors");
  const SpincPartition part = spinc_partition(ctx, options.budget);
  const std::uint64_t total = checked_box_size(ctx, options.budget);
  const std::uint64_t limit = default_safety_limit(ctx);

  struct Hit {
    std::size_t cls;
    CharVector initial;
    CharVector final_vector;
  };
  std::vector<std::vector<Hit>> hits(std::max(1u, options.threads));
  parallel_chunks(total, options.threads, [&](unsigned chunk, std::uint64_t begin, std::uint64_t end) {
    if (begin == end) return;
    BoxCursor cursor(ctx);
    cursor.seek(begin);
    std::vector<std::int64_t> work(ctx.size());
    for (std::uint64_t i = begin; i < end; ++i, cursor.next()) {
      auto k = cursor.current();
      std::copy(k.begin(), k.end(), work.begin());
      if (!run_path_in_place(work, ctx, limit)) continue;
      hits[chunk].push_back({*part.class_of(k), CharVector(std::vector<std::int64_t>(k.begin(), k.end())),
                             CharVector(work)});
    }
  });

  BasicSet out;
  out.canonical = part.canonical;
  out.box_size = total;
  out.classes.resize(part.classes.size());
  for (std::size_t c = 0; c < part.classes.size(); ++c) {
    out.classes[c].spinc = part.classes[c];
    out.classes[c].box_count = part.box_counts[c];
  }
  // Chunks cover the box in order, so the initial vectors arrive sorted.
  for (auto& chunk : hits)
    for (auto& h : chunk) {
      out.classes[h.cls].basics.push_back(std::move(h.initial));
      out.classes[h.cls].finals.push_back(std::move(h.final_vector));
    }
  for (auto& c : out.classes) c.overflow = c.box_count - c.basics.size();
  return out;
}

bool is_rational(const QFormContext& ctx, const EngineOptions& options) {
  ctx.require_negative_definite("is_rational");
  checked_box_size(ctx, options.budget);
  const SpincKeyer keyer(ctx);
  const CharVector can = canonical_char(ctx);
  const auto target = keyer.key(can.values());
  const std::uint64_t limit = default_safety_limit(ctx);
  std::vector<std::int64_t> work(ctx.size());
  std::size_t found = 0;
  BoxCursor cursor(ctx);
  do {
    auto k = cursor.current();
    std::copy(k.begin(), k.end(), work.begin());
    if (!run_path_in_place(work, ctx, limit)) continue;
    if (keyer.key(k) != target) continue;
    if (++found == 2) return false;
  } while (cursor.next());
  return found == 1;
}

std::uint64_t default_ar_bound(const QFormContext& ctx) {
  std::uint64_t b = ctx.size();
  for (std::int64_t w : ctx.weights()) b += static_cast<std::uint64_t>(w < 0 ? -w : w);
  return b;
}

ArStatus ar_status(const QFormContext& ctx, std::uint64_t bound, const EngineOptions& options) {
  ctx.require_negative_definite("ar_status");
  if (bound == 0) bound = default_ar_bound(ctx);
  ArStatus status;
  status.bound = bound;
  const PlumbingForest& f = ctx.forest();
  std::vector<std::int64_t> weights(ctx.weights().begin(), ctx.weights().end());
  for (std::uint64_t delta = 1; delta <= bound; ++delta) {
    bool any_within_budget = false;
    for (std::size_t v = 0; v < ctx.size(); ++v) {
      std::vector<std::int64_t> w = weights;
      w[v] -= static_cast<std::int64_t>(delta);
      PlumbingForest g = PlumbingForest::from_weights(w, f.edges());
      Int box = 1;
      for (const auto& u : g.vertices()) box *= Int(-u.weight);
      if (box > options.budget) continue;
      any_within_budget = true;
      const QFormContext gctx(std::move(g));
      if (is_rational(gctx, options)) {
        status.found = true;
        status.vertex = v;
        status.decrease = static_cast<std::int64_t>(delta);
        return status;
      }
    }
    // Boxes only grow with delta.
    if (!any_within_budget) break;
  }
  return status;
}

LSpaceVerdict is_lspace(const QFormContext&, const BasicSet& basics, const ArStatus& ar) {
  LSpaceVerdict v;
  v.basic = basics.total_basic();
  v.spinc = basics.classes.size();
  v.lspace = v.basic == v.spinc;
  v.certified = ar.found;
  v.ar = ar;
  return v;
}

LSpaceVerdict is_lspace(const QFormContext& ctx, const EngineOptions& options, std::uint64_t ar_bound) {
  const BasicSet basics = basic_vectors(ctx, options);
  return is_lspace(ctx, basics, ar_status(ctx, ar_bound, options));
}

std::vector<DInvariant> d_invariants(const QFormContext& ctx, const BasicSet& basics) {
  const Int size = ctx.size();
  const Int det = ctx.abs_det();
  std::vector<DInvariant> out;
  for (const auto& c : basics.classes) {
    if (c.basics.empty())
      throw std::logic_error("Spin^c class " + c.spinc.representative.str() + " has no basic vector");
    Int best = k_square_scaled(c.basics.front().values(), ctx);
    for (const auto& k : c.basics) best = std::max(best, k_square_scaled(k.values(), ctx));
    // |det| K^2 is exact; (K^2 + |G|)/4 = (|det| K^2 + |det| |G|) / (4 |det|).
    out.push_back({c.spinc, ratio(best + det * size, 4 * det)});
  }
  return out;
}

std::vector<DInvariant> d_invariants(const QFormContext& ctx, const EngineOptions& options) {
  return d_invariants(ctx, basic_vectors(ctx, options));
}

std::vector<Rational> d_multiset(const std::vector<DInvariant>& ds) {
  std::vector<Rational> out;
  out.reserve(ds.size());
  for (const auto& d : ds) out.push_back(d.d);
  std::sort(out.begin(), out.end());
  return out;
}

Rational lens_d_oracle(std::int64_t p, std::int64_t q, std::int64_t i) {
  if (p == 1 && q == 0 && i == 0) return Rational(0);
  if (!(0 < q && q < p) || std::gcd(p, q) != 1 || i < 0 || i >= p)
    throw std::invalid_argument("lens_d_oracle: invalid (p, q, i) = (" + std::to_string(p) + ", " +
                                std::to_string(q) + ", " + std::to_string(i) + ")");
  const Int t = Int(2 * i + 1 - p - q);
  const Rational head = ratio(t * t - Int(p) * q, Int(4) * p * q);
  return head - lens_d_oracle(q, p % q, i % q);
}

}  // namespace plumb
