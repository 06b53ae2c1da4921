#include "plumb/report.hpp"

#include <sstream>

#include "plumb/errors.hpp"
#include "plumb/lattice.hpp"

namespace plumb {

namespace {

// Integers that fit in 64 bits stay numbers; larger ones become strings.
Json int_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

const char* kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::BlowDownIsolated: return "isolated";
    case MoveKind::BlowDownLeaf: return "leaf";
    case MoveKind::BlowDownChain: return "chain";
  }
  return "unknown";
}

std::string escape_dot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\' || c == '{' || c == '}' || c == '|' || c == '<' || c == '>') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Json rational_json(const Rational& r) {
  auto [num, den] = to_pair(r);
  return Json::array({num, den});
}

Json char_vector_json(const CharVector& k) { return Json(std::vector<std::int64_t>(k.values().begin(), k.values().end())); }

Json forest_json(const PlumbingForest& forest) {
  Json vertices = Json::array();
  for (const auto& v : forest.vertices()) vertices.push_back({{"id", v.id}, {"weight", v.weight}});
  Json edges = Json::array();
  for (const auto& [a, b] : forest.edges()) edges.push_back({forest.vertex(a).id, forest.vertex(b).id});
  return {{"vertices", vertices}, {"edges", edges}};
}

CheckSummary check_summary(const PlumbingForest& forest, std::uint64_t budget) {
  CheckSummary s;
  s.negdef = is_negative_definite(forest);
  s.det = determinant(forest);
  s.h1 = abs(s.det);
  s.minimal = is_minimal(forest);
  if (s.negdef) {
    const QFormContext ctx(forest);
    try {
      s.spinc = spinc_partition(ctx, budget).classes.size();
    } catch (const BudgetExceeded&) {
    }
  }
  return s;
}

Json check_json(const CheckSummary& s) {
  Json j{{"negdef", s.negdef}, {"det", int_json(s.det)}, {"h1", int_json(s.h1)}, {"minimal", s.minimal}};
  j["spinc"] = s.spinc ? Json(*s.spinc) : Json(nullptr);
  return j;
}

Json basic_json(const BasicSet& basics) {
  Json classes = Json::array();
  for (const auto& c : basics.classes) {
    Json b = Json::array(), f = Json::array();
    for (const auto& k : c.basics) b.push_back(char_vector_json(k));
    for (const auto& k : c.finals) f.push_back(char_vector_json(k));
    classes.push_back({{"representative", char_vector_json(c.spinc.representative)},
                       {"basics", b},
                       {"finals", f},
                       {"overflow", c.overflow},
                       {"box_count", c.box_count}});
  }
  return {{"box_size", basics.box_size},
          {"total_basic", basics.total_basic()},
          {"canonical_class", basics.canonical},
          {"classes", classes}};
}

Json verdict_json(const LSpaceVerdict& v, bool rational) {
  Json ar{{"bound", v.ar.bound}};
  if (v.ar.found) {
    ar["status"] = "yes";
    ar["vertex"] = v.ar.vertex;
    ar["decrease"] = v.ar.decrease;
  } else {
    ar["status"] = "unknown";
  }
  return {{"lspace", v.lspace ? "yes" : "no"},
          {"certified", v.certified},
          {"rational", rational},
          {"basic", v.basic},
          {"spinc", v.spinc},
          {"ar", ar}};
}

Json dinv_json(const std::vector<DInvariant>& ds) {
  Json out = Json::array();
  for (const auto& d : ds)
    out.push_back({{"spinc", char_vector_json(d.spinc.representative)},
                   {"d", rational_json(d.d)},
                   {"d_reversed", rational_json(d.d_reversed())}});
  return out;
}

Json hf_json(const HfTable& table, bool certified) {
  Json classes = Json::array();
  for (const auto& c : table.classes) {
    Json counts = Json::array();
    for (const auto& dc : c.counts) counts.push_back({{"degree", rational_json(dc.degree)}, {"count", dc.count}});
    classes.push_back({{"spinc", char_vector_json(c.spinc.representative)},
                       {"bottom", rational_json(c.bottom)},
                       {"counts", counts},
                       {"reduced_rank", c.reduced_rank},
                       {"converged", c.converged},
                       {"states", c.states},
                       {"edges", c.edges},
                       {"degree_violations", c.degree_violations}});
  }
  return {{"max_u", table.max_u},
          {"converged", table.converged()},
          {"reduced_rank", table.reduced_rank()},
          {"level", certified ? "hf" : "comb"},
          {"classes", classes}};
}

Json reduction_json(const Reduction& r) {
  Json moves = Json::array();
  for (const auto& m : r.trace.moves) {
    Json changes = Json::object();
    for (const auto& [id, delta] : m.weight_changes) changes[id] = delta;
    moves.push_back({{"kind", kind_name(m.kind)}, {"removed", m.removed}, {"neighbors", m.neighbors},
                     {"weight_changes", changes}});
  }
  return {{"forest", forest_json(r.forest)}, {"moves", moves}, {"minimal", is_minimal(r.forest)}};
}

Json census_record_json(const CensusRecord& r) {
  Json d = Json::array();
  for (const auto& x : r.d) d.push_back(rational_json(x));
  return {{"code", r.code},         {"n", r.n},         {"weights", r.weights},
          {"negdef", r.negdef},     {"det", int_json(r.det)}, {"spinc", r.spinc},
          {"basic", r.basic},       {"rational", r.rational}, {"lspace", r.lspace ? "yes" : "no"},
          {"certified", r.certified}, {"minimal", r.minimal}, {"d", d}};
}

std::string forest_dot(const PlumbingForest& forest, const BasicSet* basics) {
  std::ostringstream os;
  os << "graph plumbing {\n  node [shape=circle];\n";
  for (const auto& v : forest.vertices())
    os << "  \"" << escape_dot(v.id) << "\" [label=\"" << escape_dot(v.id) << "\\n" << v.weight << "\"];\n";
  for (const auto& [a, b] : forest.edges())
    os << "  \"" << escape_dot(forest.vertex(a).id) << "\" -- \"" << escape_dot(forest.vertex(b).id) << "\";\n";
  if (basics) {
    os << "  basics [shape=record, label=\"{Spin^c class|basic vectors}";
    for (const auto& c : basics->classes) {
      os << "|{" << escape_dot(c.spinc.representative.str()) << "|";
      for (std::size_t i = 0; i < c.basics.size(); ++i) os << (i ? " " : "") << escape_dot(c.basics[i].str());
      os << "}";
    }
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string hf_table_dot(const HfTable& table) {
  std::ostringstream os;
  os << "digraph hf {\n  node [shape=record];\n";
  for (std::size_t i = 0; i < table.classes.size(); ++i) {
    const auto& c = table.classes[i];
    os << "  class" << i << " [label=\"{" << escape_dot(c.spinc.representative.str()) << "|{degree|count}";
    for (const auto& dc : c.counts) os << "|{" << to_string(dc.degree) << "|" << dc.count << "}";
    os << "}\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace plumb
