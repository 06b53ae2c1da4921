#include "plumb/forest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "plumb/errors.hpp"
#include "plumb/linalg.hpp"

namespace plumb {

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<std::size_t> parent;
};

std::pair<std::size_t, std::size_t> ordered(std::size_t a, std::size_t b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

// --- PlumbingForest ---------------------------------------------------------

PlumbingForest::PlumbingForest(std::vector<Vertex> vertices,
                               const std::vector<std::pair<std::string, std::string>>& edges)
    : vertices_(std::move(vertices)) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index.emplace(vertices_[i].id, i).second)
      throw GraphError(GraphError::Kind::DuplicateVertex, "duplicate vertex id '" + vertices_[i].id + "'");
  }
  std::vector<Edge> idx;
  idx.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end()) throw GraphError(GraphError::Kind::UnknownEndpoint, "unknown vertex '" + a + "'");
    if (ib == index.end()) throw GraphError(GraphError::Kind::UnknownEndpoint, "unknown vertex '" + b + "'");
    idx.emplace_back(ia->second, ib->second);
  }
  build(idx);
}

PlumbingForest PlumbingForest::from_weights(std::span<const std::int64_t> weights, std::span<const Edge> edges) {
  PlumbingForest f;
  f.vertices_.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) f.vertices_.push_back({"v" + std::to_string(i + 1), weights[i]});
  for (const auto& [a, b] : edges) {
    if (a >= weights.size() || b >= weights.size())
      throw GraphError(GraphError::Kind::UnknownEndpoint, "edge endpoint out of range");
  }
  f.build(std::vector<Edge>(edges.begin(), edges.end()));
  return f;
}

void PlumbingForest::build(const std::vector<Edge>& edges) {
  adjacency_.assign(vertices_.size(), {});
  edges_.clear();
  std::set<std::pair<std::size_t, std::size_t>> seen;
  DisjointSets sets(vertices_.size());
  for (const auto& [a, b] : edges) {
    if (a == b) throw GraphError(GraphError::Kind::SelfLoop, "self-loop at '" + vertices_[a].id + "'");
    if (!seen.insert(ordered(a, b)).second)
      throw GraphError(GraphError::Kind::DuplicateEdge,
                       "repeated edge '" + vertices_[a].id + "'-'" + vertices_[b].id + "'");
    if (!sets.unite(a, b))
      throw GraphError(GraphError::Kind::Cycle,
                       "edge '" + vertices_[a].id + "'-'" + vertices_[b].id + "' closes a cycle");
    edges_.emplace_back(a, b);
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

std::vector<std::int64_t> PlumbingForest::weights() const {
  std::vector<std::int64_t> w;
  w.reserve(vertices_.size());
  for (const auto& v : vertices_) w.push_back(v.weight);
  return w;
}

bool PlumbingForest::adjacent(std::size_t i, std::size_t j) const {
  const auto& nbrs = adjacency_.at(i);
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

std::optional<std::size_t> PlumbingForest::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].id == id) return i;
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> PlumbingForest::components() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(size(), false);
  for (std::size_t s = 0; s < size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (std::size_t w : adjacency_[comp[head]]) {
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool PlumbingForest::connected() const { return components().size() <= 1; }

bool operator==(const PlumbingForest& a, const PlumbingForest& b) {
  if (a.vertices_ != b.vertices_ || a.edges_.size() != b.edges_.size()) return false;
  auto edge_set = [](const PlumbingForest& f) {
    std::set<std::pair<std::size_t, std::size_t>> s;
    for (const auto& [x, y] : f.edges_) s.insert(ordered(x, y));
    return s;
  };
  return edge_set(a) == edge_set(b);
}

// --- parsing ----------------------------------------------------------------

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::int64_t parse_int(const Token& tok, std::size_t line) {
  std::int64_t value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw GraphError(GraphError::Kind::Syntax, "expected an integer, got '" + std::string(tok.text) + "'", line,
                     tok.column);
  return value;
}

}  // namespace

PlumbingForest parse_forest(std::string_view text) {
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::unordered_map<std::string, std::size_t> index;
  std::set<std::pair<std::size_t, std::size_t>> seen_edges;
  std::vector<std::size_t> parent;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t chain_counter = 0;

  auto add_vertex = [&](std::string id, std::int64_t weight, std::size_t line, std::size_t column) {
    if (index.count(id))
      throw GraphError(GraphError::Kind::DuplicateVertex, "duplicate vertex id '" + id + "'", line, column);
    index.emplace(id, vertices.size());
    parent.push_back(vertices.size());
    vertices.push_back({std::move(id), weight});
  };
  auto add_edge = [&](const std::string& a, const std::string& b, std::size_t line, std::size_t column) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end())
      throw GraphError(GraphError::Kind::UnknownEndpoint, "unknown vertex '" + a + "'", line, column);
    if (ib == index.end())
      throw GraphError(GraphError::Kind::UnknownEndpoint, "unknown vertex '" + b + "'", line, column);
    if (ia->second == ib->second)
      throw GraphError(GraphError::Kind::SelfLoop, "self-loop at '" + a + "'", line, column);
    if (!seen_edges.insert(ordered(ia->second, ib->second)).second)
      throw GraphError(GraphError::Kind::DuplicateEdge, "repeated edge '" + a + "'-'" + b + "'", line, column);
    std::size_t ra = find(ia->second);
    std::size_t rb = find(ib->second);
    if (ra == rb)
      throw GraphError(GraphError::Kind::Cycle, "edge '" + a + "'-'" + b + "' closes a cycle", line, column);
    parent[rb] = ra;
    edges.emplace_back(a, b);
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().text.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const auto& head = tokens.front();
    if (head.text == "vertex") {
      if (tokens.size() != 3)
        throw GraphError(GraphError::Kind::Syntax, "expected 'vertex <id> <int>'", line_no, head.column);
      add_vertex(std::string(tokens[1].text), parse_int(tokens[2], line_no), line_no, tokens[1].column);
    } else if (head.text == "edge") {
      if (tokens.size() != 3)
        throw GraphError(GraphError::Kind::Syntax, "expected 'edge <id> <id>'", line_no, head.column);
      add_edge(std::string(tokens[1].text), std::string(tokens[2].text), line_no, tokens[1].column);
    } else if (head.text == "chain") {
      if (tokens.size() < 2)
        throw GraphError(GraphError::Kind::Syntax, "expected 'chain <int> ...'", line_no, head.column);
      std::string previous;
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        std::int64_t w = parse_int(tokens[t], line_no);
        std::string id = "c" + std::to_string(++chain_counter);
        add_vertex(id, w, line_no, tokens[t].column);
        if (!previous.empty()) add_edge(previous, id, line_no, tokens[t].column);
        previous = id;
      }
    } else {
      throw GraphError(GraphError::Kind::Syntax, "unknown directive '" + std::string(head.text) + "'", line_no,
                       head.column);
    }
    if (end == text.size()) break;
  }
  return PlumbingForest(std::move(vertices), edges);
}

PlumbingForest parse_forest_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw GraphError(GraphError::Kind::Syntax, std::string("invalid JSON: ") + e.what());
  }
  auto id_of = [](const nlohmann::json& j) -> std::string {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw GraphError(GraphError::Kind::Syntax, "vertex ids must be strings or integers");
  };
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
    throw GraphError(GraphError::Kind::Syntax, "expected an object with a \"vertices\" array");
  std::vector<Vertex> vertices;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_object() || !v.contains("id") || !v.contains("weight") || !v["weight"].is_number_integer())
      throw GraphError(GraphError::Kind::Syntax, "each vertex needs an \"id\" and an integer \"weight\"");
    vertices.push_back({id_of(v["id"]), v["weight"].get<std::int64_t>()});
  }
  std::vector<std::pair<std::string, std::string>> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw GraphError(GraphError::Kind::Syntax, "\"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2) throw GraphError(GraphError::Kind::Syntax, "each edge is a pair of ids");
      edges.emplace_back(id_of(e[0]), id_of(e[1]));
    }
  }
  return PlumbingForest(std::move(vertices), edges);
}

PlumbingForest parse_forest_auto(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_forest_json(text);
  return parse_forest(text);
}

PlumbingForest chain(std::span<const std::int64_t> weights) {
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    vertices.push_back({"c" + std::to_string(i + 1), weights[i]});
    if (i > 0) edges.emplace_back("c" + std::to_string(i), "c" + std::to_string(i + 1));
  }
  return PlumbingForest(std::move(vertices), edges);
}

PlumbingForest chain(std::initializer_list<std::int64_t> weights) {
  return chain(std::span<const std::int64_t>(weights.begin(), weights.size()));
}

PlumbingForest star(std::int64_t center, std::initializer_list<std::int64_t> leaves) {
  std::vector<Vertex> vertices{{"center", center}};
  std::vector<std::pair<std::string, std::string>> edges;
  std::size_t i = 0;
  for (std::int64_t w : leaves) {
    std::string id = "leaf" + std::to_string(++i);
    vertices.push_back({id, w});
    edges.emplace_back("center", id);
  }
  return PlumbingForest(std::move(vertices), edges);
}

PlumbingForest e8_forest() {
  std::vector<Vertex> vertices;
  for (int i = 1; i <= 8; ++i) vertices.push_back({"v" + std::to_string(i), -2});
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i < 7; ++i) edges.emplace_back("v" + std::to_string(i), "v" + std::to_string(i + 1));
  edges.emplace_back("v5", "v8");
  return PlumbingForest(std::move(vertices), edges);
}

// --- intersection form ------------------------------------------------------

IntersectionMatrix::IntersectionMatrix(const PlumbingForest& forest) : n_(forest.size()), entries_(n_ * n_, 0) {
  for (std::size_t i = 0; i < n_; ++i) entries_[i * n_ + i] = forest.weight(i);
  for (const auto& [a, b] : forest.edges()) {
    entries_[a * n_ + b] = 1;
    entries_[b * n_ + a] = 1;
  }
}

std::vector<std::vector<std::int64_t>> IntersectionMatrix::rows() const {
  std::vector<std::vector<std::int64_t>> out(n_, std::vector<std::int64_t>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

IntersectionMatrix intersection_matrix(const PlumbingForest& forest) { return IntersectionMatrix(forest); }

namespace {

struct Overflow {};

struct Checked {
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
};

struct Big {
  static Int mul(const Int& a, const Int& b) { return a * b; }
  static Int sub(const Int& a, const Int& b) { return a - b; }
  static Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
};

// Pivot of v after eliminating its subtree: m(v) - sum_c 1/pivot(c), kept as
// num/den with den > 0. Returns false as soon as a pivot is not negative.
template <typename T, typename Ops>
bool eliminate_negative(const PlumbingForest& f) {
  const std::size_t n = f.size();
  std::vector<T> num(n), den(n);
  std::vector<bool> visited(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (visited[root]) continue;
    // Iterative DFS producing a post-order.
    std::vector<std::size_t> order;
    std::vector<std::size_t> parent(n, n);
    std::vector<std::size_t> stack{root};
    visited[root] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (std::size_t w : f.neighbors(v)) {
        if (!visited[w]) {
          visited[w] = true;
          parent[w] = v;
          stack.push_back(w);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::size_t v = *it;
      T p = T(f.weight(v));
      T q = T(1);
      for (std::size_t c : f.neighbors(v)) {
        if (c == parent[v]) continue;
        // p/q - den_c/num_c with num_c < 0
        T np = Ops::sub(Ops::mul(q, den[c]), Ops::mul(p, num[c]));
        T nq = Ops::mul(q, -num[c]);
        T g = Ops::gcd(np < 0 ? T(-np) : np, nq);
        if (g > 1) {
          np /= g;
          nq /= g;
        }
        p = np;
        q = nq;
      }
      if (!(p < 0)) return false;
      num[v] = p;
      den[v] = q;
    }
  }
  return true;
}

}  // namespace

bool is_negative_definite(const PlumbingForest& forest) {
  try {
    return eliminate_negative<std::int64_t, Checked>(forest);
  } catch (const Overflow&) {
    return eliminate_negative<Int, Big>(forest);
  }
}

Int determinant(const PlumbingForest& forest) {
  if (forest.empty()) return Int(1);
  return fast_determinant(IntersectionMatrix(forest).rows());
}

Int h1_order(const PlumbingForest& forest) { return abs(determinant(forest)); }

// --- reduction --------------------------------------------------------------

namespace {

class Workbench {
 public:
  explicit Workbench(const PlumbingForest& f) : vertices_(f.vertices().begin(), f.vertices().end()) {
    alive_.assign(vertices_.size(), true);
    adjacency_.assign(vertices_.size(), {});
    for (const auto& [a, b] : f.edges()) add_edge(a, b);
  }

  std::vector<std::size_t> candidates() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (alive_[v] && vertices_[v].weight == -1 && adjacency_[v].size() <= 2) out.push_back(v);
    return out;
  }

  std::optional<std::size_t> find(const std::string& id) const {
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (alive_[v] && vertices_[v].id == id) return v;
    return std::nullopt;
  }

  ReductionMove blow_down(std::size_t v) {
    ReductionMove move;
    move.removed = vertices_[v].id;
    std::vector<std::size_t> nbrs(adjacency_[v].begin(), adjacency_[v].end());
    move.kind = nbrs.empty() ? MoveKind::BlowDownIsolated
                             : (nbrs.size() == 1 ? MoveKind::BlowDownLeaf : MoveKind::BlowDownChain);
    for (std::size_t u : nbrs) {
      move.neighbors.push_back(vertices_[u].id);
      remove_edge(v, u);
      vertices_[u].weight += 1;
      move.weight_changes.emplace_back(vertices_[u].id, 1);
    }
    if (nbrs.size() == 2) add_edge(nbrs[0], nbrs[1]);
    alive_[v] = false;
    return move;
  }

  PlumbingForest result() const {
    std::vector<Vertex> vs;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (alive_[v]) vs.push_back(vertices_[v]);
    std::vector<std::pair<std::string, std::string>> es;
    for (const auto& [a, b] : edge_order_)
      if (alive_[a] && alive_[b] && adjacency_[a].count(b)) es.emplace_back(vertices_[a].id, vertices_[b].id);
    return PlumbingForest(std::move(vs), es);
  }

  std::int64_t weight(std::size_t v) const { return vertices_[v].weight; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }
  std::vector<std::string> neighbor_ids(std::size_t v) const {
    std::vector<std::string> out;
    for (std::size_t u : adjacency_[v]) out.push_back(vertices_[u].id);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void add_edge(std::size_t a, std::size_t b) {
    adjacency_[a].insert(b);
    adjacency_[b].insert(a);
    edge_order_.emplace_back(a, b);
  }
  void remove_edge(std::size_t a, std::size_t b) {
    adjacency_[a].erase(b);
    adjacency_[b].erase(a);
  }

  std::vector<Vertex> vertices_;
  std::vector<bool> alive_;
  std::vector<std::set<std::size_t>> adjacency_;
  std::vector<Edge> edge_order_;
};

}  // namespace

Reduction reduce(const PlumbingForest& forest, std::mt19937_64* rng) {
  Workbench bench(forest);
  ReductionTrace trace;
  for (;;) {
    auto cands = bench.candidates();
    if (cands.empty()) break;
    std::size_t pick = cands.front();
    if (rng != nullptr) pick = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(*rng)];
    trace.moves.push_back(bench.blow_down(pick));
  }
  return {bench.result(), std::move(trace)};
}

PlumbingForest replay(const PlumbingForest& forest, const ReductionTrace& trace) {
  Workbench bench(forest);
  for (const auto& move : trace.moves) {
    auto v = bench.find(move.removed);
    if (!v || bench.weight(*v) != -1 || bench.degree(*v) > 2)
      throw std::invalid_argument("trace does not apply: '" + move.removed + "' is not a blow-down candidate");
    auto expected = move.neighbors;
    std::sort(expected.begin(), expected.end());
    if (bench.neighbor_ids(*v) != expected)
      throw std::invalid_argument("trace does not apply: neighbours of '" + move.removed + "' differ");
    bench.blow_down(*v);
  }
  return bench.result();
}

bool is_minimal(const PlumbingForest& forest) {
  for (std::size_t v = 0; v < forest.size(); ++v)
    if (forest.weight(v) == -1 && forest.degree(v) <= 2) return false;
  return true;
}

// --- canonical codes --------------------------------------------------------

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

std::string rooted_code(const Adjacency& adj, const std::int64_t* weights, std::size_t v, std::size_t parent) {
  std::vector<std::string> children;
  for (std::size_t c : adj[v])
    if (c != parent) children.push_back(rooted_code(adj, weights, c, v));
  std::sort(children.begin(), children.end());
  std::string out = "(";
  if (weights) out += std::to_string(weights[v]);
  for (const auto& c : children) out += c;
  out += ')';
  return out;
}

std::vector<std::size_t> centroids(const Adjacency& adj, const std::vector<std::size_t>& comp) {
  const std::size_t n = adj.size();
  const std::size_t total = comp.size();
  if (total == 1) return {comp.front()};
  std::vector<std::size_t> parent(n, n), order, subtree(n, 1);
  std::vector<std::size_t> stack{comp.front()};
  std::vector<bool> seen(n, false);
  seen[comp.front()] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (std::size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        stack.push_back(w);
      }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent[*it] != n) subtree[parent[*it]] += subtree[*it];
  std::vector<std::size_t> out;
  for (std::size_t v : comp) {
    std::size_t largest = total - subtree[v];
    for (std::size_t w : adj[v])
      if (w != parent[v]) largest = std::max(largest, subtree[w]);
    if (2 * largest <= total) out.push_back(v);
  }
  return out;
}

std::string code_impl(const Adjacency& adj, const std::int64_t* weights) {
  const std::size_t n = adj.size();
  std::vector<std::string> parts;
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t w : adj[comp[i]])
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
    std::string best;
    for (std::size_t c : centroids(adj, comp)) {
      std::string code = rooted_code(adj, weights, c, n);
      if (best.empty() || code < best) best = std::move(code);
    }
    parts.push_back(std::move(best));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += '+';
    out += parts[i];
  }
  return out;
}

Adjacency adjacency_of(const PlumbingForest& f) {
  Adjacency adj(f.size());
  for (std::size_t v = 0; v < f.size(); ++v) adj[v].assign(f.neighbors(v).begin(), f.neighbors(v).end());
  return adj;
}

}  // namespace

std::string canonical_code(std::span<const std::int64_t> weights, const std::vector<std::vector<std::size_t>>& adjacency) {
  if (weights.size() != adjacency.size()) throw std::invalid_argument("dimension mismatch");
  return code_impl(adjacency, weights.data());
}

std::string canonical_code(const PlumbingForest& forest) {
  const auto w = forest.weights();
  return code_impl(adjacency_of(forest), w.data());
}
std::string shape_code(const PlumbingForest& forest) { return code_impl(adjacency_of(forest), nullptr); }

}  // namespace plumb
