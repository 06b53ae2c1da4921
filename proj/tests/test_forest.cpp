#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "plumb/errors.hpp"
#include "plumb/forest.hpp"
#include "plumb/linalg.hpp"

using namespace plumb;

namespace {

PlumbingForest sigma237() { return star(-1, {-2, -3, -7}); }

// Same forest with vertex order permuted by perm (new index i holds old perm[i]).
PlumbingForest relabel(const PlumbingForest& f, const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> where(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) where[perm[i]] = i;
  std::vector<std::int64_t> w(f.size());
  for (std::size_t i = 0; i < perm.size(); ++i) w[i] = f.weight(perm[i]);
  std::vector<Edge> edges;
  for (const auto& [a, b] : f.edges()) edges.emplace_back(where[a], where[b]);
  return PlumbingForest::from_weights(w, edges);
}

GraphError::Kind parse_error_kind(std::string_view text) {
  try {
    parse_forest(text);
  } catch (const GraphError& e) {
    return e.kind();
  }
  FAIL("no GraphError thrown");
  return GraphError::Kind::Syntax;
}

}  // namespace

TEST_CASE("chain shorthand expands to a path") {
  const auto f = parse_forest("chain -2 -1 -2\n");
  REQUIRE(f.size() == 3);
  CHECK(f.weights() == std::vector<std::int64_t>{-2, -1, -2});
  CHECK(f.vertex(0).id == "c1");
  CHECK(f.adjacent(0, 1));
  CHECK(f.adjacent(1, 2));
  CHECK_FALSE(f.adjacent(0, 2));
}

TEST_CASE("vertex and edge lines build a two-vertex path") {
  const auto f = parse_forest("vertex a -2\nvertex b -2\nedge a b\n");
  REQUIRE(f.size() == 2);
  CHECK(f.edges().size() == 1);
  CHECK(f.index_of("b") == 1u);
}

TEST_CASE("comments, blank lines and several components") {
  const auto f = parse_forest("# two pieces\n\nvertex a -2\n  vertex b -3\nvertex c -5\nedge a b\n");
  CHECK(f.size() == 3);
  CHECK(f.components().size() == 2);
  CHECK_FALSE(f.connected());
}

TEST_CASE("forest invariants are enforced") {
  CHECK(parse_error_kind("vertex a -2\nvertex b -2\nvertex c -2\nedge a b\nedge b c\nedge c a\n") ==
        GraphError::Kind::Cycle);
  CHECK(parse_error_kind("vertex a -2\nvertex a -3\n") == GraphError::Kind::DuplicateVertex);
  CHECK(parse_error_kind("vertex a -2\nedge a z\n") == GraphError::Kind::UnknownEndpoint);
  CHECK(parse_error_kind("vertex a -2\nedge a a\n") == GraphError::Kind::SelfLoop);
  CHECK(parse_error_kind("vertex a -2\nvertex b -2\nedge a b\nedge b a\n") == GraphError::Kind::DuplicateEdge);
  CHECK(parse_error_kind("vertex a minus\n") == GraphError::Kind::Syntax);
  CHECK(parse_error_kind("loop a\n") == GraphError::Kind::Syntax);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_forest("vertex a -2\n\nvertex b x7\n");
    FAIL("expected a syntax error");
  } catch (const GraphError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 10);
  }
}

TEST_CASE("JSON input mirrors the text grammar") {
  const auto j = parse_forest_auto(R"({"vertices":[{"id":"a","weight":-2},{"id":"b","weight":-3}],"edges":[["a","b"]]})");
  const auto t = parse_forest("vertex a -2\nvertex b -3\nedge a b\n");
  CHECK(j == t);
  CHECK_THROWS_AS(parse_forest_json("{\"vertices\": 3}"), GraphError);
  CHECK_THROWS_AS(parse_forest_json("not json"), GraphError);
}

TEST_CASE("intersection matrix entries") {
  CHECK(intersection_matrix(chain({-2})).rows() == oracle::Matrix{{-2}});
  CHECK(intersection_matrix(chain({-2, -3})).rows() == oracle::Matrix{{-2, 1}, {1, -3}});
  const auto rows = intersection_matrix(sigma237()).rows();
  CHECK(rows[0] == std::vector<std::int64_t>{-1, 1, 1, 1});
  CHECK(rows[3] == std::vector<std::int64_t>{1, 0, 0, -7});
}

TEST_CASE("negative definiteness of small forms") {
  CHECK(is_negative_definite(chain({-2})));
  CHECK_FALSE(is_negative_definite(chain({0})));
  CHECK_FALSE(is_negative_definite(chain({-2, -1, -2})));
  CHECK(determinant(chain({-2, -1, -2})) == 0);
  const auto minors = leading_minors(IntMatrix::from_rows(intersection_matrix(chain({-2, -1, -2})).rows()));
  CHECK(minors == std::vector<Int>{-2, 1, 0});
  CHECK(is_negative_definite(e8_forest()));
  CHECK(is_negative_definite(sigma237()));
}

TEST_CASE("determinants and first homology") {
  CHECK(h1_order(chain({-2})) == 2);
  CHECK(determinant(sigma237()) == 1);
  CHECK(determinant(e8_forest()) == 1);
  CHECK(h1_order(chain({-2, -2, -2, -2, -2, -2, -2, -2})) == 9);
  CHECK(h1_order(chain({-2, -1, -2})) == 0);
}

TEST_CASE("determinant agrees with cofactor expansion and Sylvester on random trees") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 7)(rng);
    const auto f = oracle::random_tree(rng, n, -5);
    const auto q = oracle::form(f);
    CHECK(determinant(f) == oracle::cofactor_det(q));
    CHECK(is_negative_definite(f) == oracle::sylvester_negdef(q));
    CHECK(bareiss_determinant(IntMatrix::from_rows(q)) == oracle::cofactor_det(q));
    CHECK(fast_determinant(q) == oracle::cofactor_det(q));
  }
}

TEST_CASE("big weights fall back to exact big integers") {
  const std::int64_t big = -(std::int64_t{1} << 40);
  const auto f = chain({big, big, big});
  const Int b = big;
  CHECK(determinant(f) == b * b * b - 2 * b);
  CHECK(is_negative_definite(f));
}

TEST_CASE("adjugate times matrix is det times identity") {
  const auto q = IntMatrix::from_rows(intersection_matrix(sigma237()).rows());
  const Adjugate a = adjugate(q);
  CHECK(a.det == 1);
  IntMatrix expect = IntMatrix::identity(4);
  CHECK(a.adj * q == expect);
  const auto x = solve(a, {1, 0, 0, 0});
  REQUIRE(x);
  CHECK((*x)[0] == -42);
}

TEST_CASE("blow-down moves") {
  const auto isolated = reduce(chain({-1}));
  CHECK(isolated.forest.empty());
  REQUIRE(isolated.trace.moves.size() == 1);
  CHECK(isolated.trace.moves[0].kind == MoveKind::BlowDownIsolated);

  const auto r = reduce(chain({-2, -1, -2}));
  REQUIRE(r.forest.size() == 1);
  CHECK(r.forest.weight(0) == 0);
  REQUIRE(r.trace.moves.size() == 2);
  CHECK(r.trace.moves[0].kind == MoveKind::BlowDownChain);
  CHECK(r.trace.moves[1].kind == MoveKind::BlowDownLeaf);
  CHECK(replay(chain({-2, -1, -2}), r.trace) == r.forest);

  const auto e8 = reduce(e8_forest());
  CHECK(e8.trace.empty());
  CHECK(e8.forest == e8_forest());
}

TEST_CASE("degree three -1 vertices stay") {
  const auto r = reduce(sigma237());
  CHECK(r.trace.empty());
  CHECK(is_minimal(sigma237()));
}

TEST_CASE("adjacent -1 vertices make the result order dependent") {
  // Not negative definite: either -1 can go first and the survivors differ.
  const auto f = chain({-2, -1, -1, -3});
  std::mt19937_64 rng(1);
  std::set<std::string> codes;
  for (int i = 0; i < 50; ++i) codes.insert(canonical_code(reduce(f, &rng).forest));
  CHECK(codes.size() == 2);
}

TEST_CASE("minimality") {
  CHECK(is_minimal(e8_forest()));
  CHECK_FALSE(is_minimal(chain({-2, -1, -2})));
  CHECK(is_minimal(PlumbingForest{}));
}

TEST_CASE("reduction of negative-definite forests is confluent under random move orders") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto f = oracle::random_tree(rng, std::uniform_int_distribution<std::size_t>(1, 6)(rng), -4);
    if (!is_negative_definite(f)) {
      --i;
      continue;
    }
    int counter = 0;
    const int ups = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int k = 0; k < ups; ++k) f = oracle::random_blow_up(rng, f, counter);
    const std::string base = canonical_code(reduce(f).forest);
    for (int k = 0; k < 5; ++k) {
      const auto r = reduce(f, &rng);
      CHECK(canonical_code(r.forest) == base);
      CHECK(replay(f, r.trace) == r.forest);
    }
  }
}

TEST_CASE("canonical codes") {
  CHECK(canonical_code(chain({-2, -3})) == canonical_code(chain({-3, -2})));
  CHECK(canonical_code(chain({-2, -3})) != canonical_code(chain({-2, -4})));
  CHECK(shape_code(chain({-2, -3})) == shape_code(chain({-2, -4})));
  std::vector<std::size_t> perm{7, 3, 5, 0, 6, 1, 4, 2};
  CHECK(canonical_code(relabel(e8_forest(), perm)) == canonical_code(e8_forest()));
  // Same degree sequence, different trees.
  CHECK(canonical_code(star(-2, {-2, -2, -2})) != canonical_code(chain({-2, -2, -2, -2})));
}

TEST_CASE("canonical code is invariant under relabeling") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    const auto f = oracle::random_tree(rng, std::uniform_int_distribution<std::size_t>(2, 9)(rng), -3);
    const std::string code = canonical_code(f);
    std::vector<std::size_t> perm(f.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (int i = 0; i < 100; ++i) {
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(canonical_code(relabel(f, perm)) == code);
    }
  }
}

TEST_CASE("canonical code separates non-isomorphic trees") {
  for (std::size_t n = 1; n <= 7; ++n) {
    std::set<std::string> oracle_codes, codes;
    oracle::for_each_labelled_tree(n, [&](const auto& edges) {
      const std::vector<std::int64_t> weights(n, -2);
      oracle_codes.insert(oracle::centre_code(n, edges));
      codes.insert(canonical_code(PlumbingForest::from_weights(weights, edges)));
    });
    CHECK(codes.size() == oracle_codes.size());
  }
}
