#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "plumb/ellipsoid.hpp"
#include "plumb/errors.hpp"
#include "plumb/lattice.hpp"

using namespace plumb;

namespace {

std::vector<std::int64_t> vec(const CharVector& k) { return {k.values().begin(), k.values().end()}; }

}  // namespace

TEST_CASE("box of initial vectors") {
  CHECK(char_box(QFormContext(chain({-2}))) == std::vector<CharVector>{{0}, {2}});
  CHECK(char_box(QFormContext(chain({-3}))) == std::vector<CharVector>{{-1}, {1}, {3}});
  const QFormContext e8(e8_forest());
  const auto box = char_box(e8);
  CHECK(box.size() == 256);
  CHECK(std::is_sorted(box.begin(), box.end()));
  CHECK(e8.box_size() == 256);
  for (const auto& k : box) {
    CHECK(in_part_box(k.values(), e8));
    CHECK(is_characteristic(k, e8));
  }
}

TEST_CASE("box budget is a hard error") {
  const QFormContext ctx(chain({-9, -9, -9}));
  CHECK_THROWS_AS(char_box(ctx, 100), BudgetExceeded);
  CHECK(char_box(ctx, 729).size() == 729);
}

TEST_CASE("cursor seek matches sequential order") {
  const QFormContext ctx(chain({-3, -2, -4}));
  const auto box = char_box(ctx);
  for (std::uint64_t i = 0; i < box.size(); ++i) {
    BoxCursor c(ctx);
    c.seek(i);
    CHECK(std::vector<std::int64_t>(c.current().begin(), c.current().end()) == vec(box[i]));
  }
  BoxCursor c(ctx);
  std::size_t count = 1;
  while (c.next()) ++count;
  CHECK(count == box.size());
}

TEST_CASE("add_pd row arithmetic") {
  const QFormContext one(chain({-2}));
  CHECK(add_pd(CharVector{2}, 0, one) == CharVector{-2});
  const QFormContext two(chain({-2, -2}));
  CHECK(add_pd(CharVector{0, 0}, 0, two) == CharVector{-4, 2});
}

TEST_CASE("Spin^c membership") {
  const QFormContext m2(chain({-2}));
  CHECK(same_spinc(CharVector{2}, CharVector{2}, m2));
  CHECK_FALSE(same_spinc(CharVector{0}, CharVector{2}, m2));
  CHECK(same_spinc(CharVector{2}, CharVector{-2}, m2));
  REQUIRE(pd_difference(CharVector{2}, CharVector{-2}, m2));
  CHECK(pd_difference(CharVector{2}, CharVector{-2}, m2)->at(0) == 1);
  const QFormContext m3(chain({-3}));
  CHECK(same_spinc(CharVector{3}, CharVector{-3}, m3));
  CHECK_FALSE(pd_difference(CharVector{1}, CharVector{3}, m3));
}

TEST_CASE("class counts") {
  CHECK(spinc_classes(QFormContext(chain({-2}))).size() == 2);
  CHECK(spinc_classes(QFormContext(chain({-3}))).size() == 3);
  CHECK(spinc_classes(QFormContext(e8_forest())).size() == 1);
  const auto p = spinc_partition(QFormContext(chain({-3})));
  CHECK(p.box_counts == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("canonical vector") {
  CHECK(canonical_char(QFormContext(e8_forest())) == CharVector(std::vector<std::int64_t>(8, 0)));
  CHECK(canonical_char(QFormContext(chain({-3}))) == CharVector{-1});
  CHECK(canonical_char(QFormContext(star(-1, {-2, -3, -7}))) == CharVector{1, 0, -1, -5});
}

TEST_CASE("exact squares") {
  const QFormContext e8(e8_forest());
  CHECK(k_square(CharVector(std::vector<std::int64_t>(8, 0)), e8) == 0);
  CHECK(k_square(CharVector{2}, QFormContext(chain({-2}))) == -2);
  CHECK(k_square(CharVector{3}, QFormContext(chain({-3}))) == -3);
  const QFormContext ctx(chain({-2, -2}));
  CHECK(k_square(CharVector{2, 0}, ctx) == ratio(-8, 3));
  CHECK(k_square_scaled(std::vector<std::int64_t>{2, 0}, ctx) == -8);
}

TEST_CASE("squares and class tests agree with a rational inverse on random forests") {
  std::mt19937_64 rng(3);
  int tested = 0;
  while (tested < 100) {
    const auto f = oracle::random_tree(rng, std::uniform_int_distribution<std::size_t>(1, 5)(rng), -5);
    if (!is_negative_definite(f)) continue;
    ++tested;
    const QFormContext ctx(f);
    const auto inv = oracle::inverse(oracle::form(f));
    const auto box = char_box(ctx);
    const auto part = spinc_partition(ctx);
    std::uniform_int_distribution<std::size_t> pick(0, box.size() - 1);
    for (int j = 0; j < 5; ++j) {
      const auto& a = box[pick(rng)];
      const auto& b = box[pick(rng)];
      CHECK(k_square(a, ctx) == oracle::square(inv, vec(a)));
      CHECK(same_spinc(a, b, ctx) == oracle::same_class(inv, vec(a), vec(b)));
      CHECK(same_spinc(a, b, ctx) == (part.class_of(a.values()) == part.class_of(b.values())));
    }
  }
}

TEST_CASE("conjugation") {
  CHECK(conjugate(CharVector{0, 0, 0}) == CharVector{0, 0, 0});
  const QFormContext m2(chain({-2}));
  CHECK(same_spinc(CharVector{2}, conjugate(CharVector{2}), m2));
  const QFormContext m3(chain({-3}));
  CHECK_FALSE(same_spinc(CharVector{1}, conjugate(CharVector{1}), m3));
  CHECK(conjugate(conjugate(CharVector{1, -3, 5})) == CharVector{1, -3, 5});
}

TEST_CASE("ellipsoid enumeration finds exactly the short vectors") {
  // Brute force over a wide window of offsets x.
  const QFormContext ctx(chain({-2, -3}));
  const CharVector rep = canonical_char(ctx);
  const Rational bound = 40;
  const auto range = ellipsoid_box(ctx, rep, bound);
  REQUIRE(range.size() == 2);
  std::set<std::vector<std::int64_t>> found;
  for_each_char_in_ellipsoid(ctx, rep, bound, 1'000'000,
                             [&](std::span<const std::int64_t> x, std::span<const std::int64_t> k) {
                               for (std::size_t i = 0; i < 2; ++i) {
                                 CHECK(x[i] >= range[i].first);
                                 CHECK(x[i] <= range[i].second);
                               }
                               found.emplace(k.begin(), k.end());
                             });
  const auto inv = oracle::inverse(oracle::form(ctx.forest()));
  std::set<std::vector<std::int64_t>> expect;
  for (std::int64_t x0 = -20; x0 <= 20; ++x0)
    for (std::int64_t x1 = -20; x1 <= 20; ++x1) {
      CharVector k{rep[0] + 2 * (-2 * x0 + x1), rep[1] + 2 * (x0 - 3 * x1)};
      if (-oracle::square(inv, vec(k)) <= bound) expect.insert(vec(k));
    }
  CHECK(found == expect);
  CHECK_FALSE(found.empty());
}

TEST_CASE("preconditions") {
  const QFormContext bad(chain({-2, -1, -2}));
  CHECK_FALSE(bad.nondegenerate());
  CHECK_THROWS_AS(bad.require_negative_definite("test"), PreconditionError);
}
