#include "plumb/ellipsoid.hpp"

#include <algorithm>
#include <cmath>

#include "plumb/errors.hpp"

namespace plumb {

namespace {

Int lcm(const Int& a, const Int& b) { return a / boost::multiprecision::gcd(a, b) * b; }

// Leaf-first order: every vertex precedes its parent, roots come last. With
// this order the symmetric elimination of -Q has no fill-in, so each
// coordinate couples only to its parent.
std::vector<std::size_t> leaf_first_order(const PlumbingForest& f, std::vector<std::size_t>& parent) {
  const std::size_t n = f.size();
  parent.assign(n, n);
  std::vector<std::size_t> order;
  std::vector<bool> seen(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::size_t> pre{root}, stack{root};
    seen[root] = true;
    pre.clear();
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      pre.push_back(v);
      for (std::size_t w : f.neighbors(v))
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = v;
          stack.push_back(w);
        }
    }
    order.insert(order.end(), pre.rbegin(), pre.rend());
  }
  return order;
}

using Visit = std::function<void(std::span<const std::int64_t>, std::span<const std::int64_t>)>;

// Integer-scaled Fincke-Pohst data, computed exactly once per call.
struct Setup {
  std::size_t n = 0;
  std::vector<std::size_t> order;   // position -> vertex
  std::vector<std::size_t> parent;  // vertex -> parent vertex (n for roots)
  std::vector<Int> coupling;        // vertex -> lmu * mu(v, parent)
  std::vector<Int> scaled_centre;   // vertex -> lc * c_v
  std::vector<Int> diag;            // vertex -> ld * d_v
  Int lmu, lc, scale;               // scale = lmu * lc
  Int total;                        // ld * scale^2 * bound / 4
  bool empty = false;

  Setup(const QFormContext& ctx, const CharVector& rep, const Rational& bound) {
    n = ctx.size();
    order = leaf_first_order(ctx.forest(), parent);

    // c = P^{-1} k_rep / 2 with P = -Q, i.e. c = -adj(Q) k_rep / (2 det Q).
    std::vector<Rational> c(n);
    const auto& adj = ctx.adjugate();
    for (std::size_t i = 0; i < n; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < n; ++j) s += adj(i, j) * rep[j];
      c[i] = ratio(-s, 2 * ctx.det());
    }

    // Symmetric elimination of P in leaf-first order; only the diagonal and
    // the parent coupling change.
    std::vector<Rational> pivot(n);
    for (std::size_t v = 0; v < n; ++v) pivot[v] = Rational(-ctx.weight(v));
    std::vector<Rational> mu(n);
    for (std::size_t v : order) {
      if (pivot[v] <= 0) throw PreconditionError("ellipsoid enumeration needs a negative-definite form");
      if (parent[v] != n) {
        // P(v, parent) = -1.
        mu[v] = Rational(-1) / pivot[v];
        pivot[parent[v]] -= Rational(1) / pivot[v];
      }
    }

    const Rational quarter = bound / 4;
    lmu = 1;
    lc = 1;
    Int ld = denominator(quarter);
    for (std::size_t v = 0; v < n; ++v) {
      lmu = lcm(lmu, denominator(mu[v]));
      lc = lcm(lc, denominator(c[v]));
      ld = lcm(ld, denominator(pivot[v]));
    }
    scale = lmu * lc;
    coupling.resize(n);
    scaled_centre.resize(n);
    diag.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      coupling[v] = numerator(mu[v]) * (lmu / denominator(mu[v]));
      scaled_centre[v] = numerator(c[v]) * (lc / denominator(c[v]));
      diag[v] = numerator(pivot[v]) * (ld / denominator(pivot[v]));
    }
    // -K^2 = 4 (x - c)^T P (x - c) <= bound.
    empty = quarter < 0;
    total = empty ? Int(0) : numerator(quarter) * (ld / denominator(quarter)) * scale * scale;
  }

  // Every intermediate of the walk stays far inside 128 bits.
  bool fits_int128() const {
    auto small = [](const Int& v, unsigned bits) { return abs(v) < (Int(1) << bits); };
    if (!small(total, 60) || !small(scale, 28) || !small(lmu, 28) || !small(lc, 28)) return false;
    for (std::size_t v = 0; v < n; ++v)
      if (!small(coupling[v], 28) || !small(scaled_centre[v], 40) || !small(diag[v], 40)) return false;
    return true;
  }
};

inline __int128 isqrt_of(__int128 v) {
  if (v < 2) return v;
  auto s = static_cast<__int128>(std::sqrt(static_cast<long double>(v)));
  while (s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  return s;
}
inline Int isqrt_of(const Int& v) { return isqrt(v); }

template <typename T>
T floor_of(const T& a, const T& b) {
  T q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

template <typename T>
struct Walker {
  const QFormContext& ctx;
  const CharVector& rep;
  std::uint64_t budget;
  const Visit& visit;
  const Setup& s;

  std::vector<T> coupling, scaled_centre, diag;
  T lmu, lc, scale;
  std::vector<std::int64_t> x, k;
  std::vector<T> g;  // vertex -> lc * (x_v - c_v)
  std::uint64_t hits = 0;

  Walker(const QFormContext& c, const CharVector& r, std::uint64_t b, const Visit& v, const Setup& setup)
      : ctx(c), rep(r), budget(b), visit(v), s(setup) {
    auto conv = [](const Int& v) { return static_cast<T>(static_cast<Int>(v)); };
    for (std::size_t i = 0; i < s.n; ++i) {
      coupling.push_back(conv(s.coupling[i]));
      scaled_centre.push_back(conv(s.scaled_centre[i]));
      diag.push_back(conv(s.diag[i]));
    }
    lmu = conv(s.lmu);
    lc = conv(s.lc);
    scale = conv(s.scale);
    x.assign(s.n, 0);
    k.assign(s.n, 0);
    g.assign(s.n, T(0));
    descend(s.n, conv(s.total));
  }

  void emit() {
    if (++hits > budget) throw BudgetExceeded("ellipsoid enumeration exceeds " + std::to_string(budget) + " vectors");
    for (std::size_t v = 0; v < s.n; ++v) {
      std::int64_t sum = ctx.weight(v) * x[v];
      for (std::size_t u : ctx.neighbors(v)) sum += x[u];
      k[v] = rep[v] + 2 * sum;
    }
    visit(x, k);
  }

  void descend(std::size_t pos, const T& remaining) {
    // pos counts down from n; coordinates order[pos-1], ..., order[0] remain.
    if (pos == 0) {
      emit();
      return;
    }
    const std::size_t v = s.order[pos - 1];
    T z = lmu * scaled_centre[v];
    if (s.parent[v] != s.n) z -= coupling[v] * g[s.parent[v]];
    const T r = isqrt_of(T(remaining / diag[v]));
    const T lo = -floor_of<T>(T(r - z), scale);
    const T hi = floor_of<T>(T(z + r), scale);
    for (T xv = lo; xv <= hi; ++xv) {
      const T dev = scale * xv - z;
      const T used = diag[v] * dev * dev;
      if (used > remaining) continue;
      x[v] = static_cast<std::int64_t>(xv);
      g[v] = lc * xv - scaled_centre[v];
      descend(pos - 1, T(remaining - used));
    }
  }
};

}  // namespace

void for_each_char_in_ellipsoid(
    const QFormContext& ctx, const CharVector& rep, const Rational& bound, std::uint64_t budget,
    const std::function<void(std::span<const std::int64_t> x, std::span<const std::int64_t> k)>& visit) {
  ctx.require_negative_definite("for_each_char_in_ellipsoid");
  if (rep.size() != ctx.size()) throw std::invalid_argument("dimension mismatch");
  const Setup setup(ctx, rep, bound);
  if (setup.empty) return;
  if (setup.fits_int128())
    Walker<__int128>(ctx, rep, budget, visit, setup);
  else
    Walker<Int>(ctx, rep, budget, visit, setup);
}

std::vector<std::pair<std::int64_t, std::int64_t>> ellipsoid_box(const QFormContext& ctx, const CharVector& rep,
                                                                  const Rational& bound) {
  ctx.require_negative_definite("ellipsoid_box");
  const std::size_t n = ctx.size();
  std::vector<std::pair<std::int64_t, std::int64_t>> box(n, {0, -1});
  if (bound < 0) return box;
  const auto& adj = ctx.adjugate();
  for (std::size_t i = 0; i < n; ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < n; ++j) s += adj(i, j) * rep[j];
    const Rational c = ratio(-s, 2 * ctx.det());
    // max |x_i - c_i|^2 over the ellipsoid is (bound / 4) (P^{-1})_ii, P^{-1} = -adj / det.
    const Rational r2 = bound / 4 * ratio(-adj(i, i), ctx.det());
    const Int r = isqrt(numerator(r2) / denominator(r2)) + 1;
    const Int lo = floor_div(numerator(c), denominator(c)) - r;
    const Int hi = floor_div(numerator(c), denominator(c)) + 1 + r;
    box[i] = {static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)};
  }
  return box;
}

}  // namespace plumb
