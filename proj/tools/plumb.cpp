// plumb: Heegaard Floer invariants of negative-definite plumbed 3-manifolds.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 budget or bound exceeded (including an unconverged degree window).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "plumb/census.hpp"
#include "plumb/engine.hpp"
#include "plumb/errors.hpp"
#include "plumb/forest.hpp"
#include "plumb/relations.hpp"
#include "plumb/report.hpp"

namespace {

using namespace plumb;

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalid = 2, kBudget = 3 };

struct Config {
  std::string file;
  std::string chain_spec;
  bool json = false;
  bool dot = false;
  std::int64_t max_u = kDefaultMaxU;
  std::int64_t expansion = -1;
  std::uint64_t ar_bound = 0;
  std::uint64_t budget = default_box_budget();
  unsigned threads = 1;
  std::uint64_t seed = 0;
  bool seeded = false;
  std::size_t max_vertices = 0;
  std::int64_t min_weight = 0;
  std::vector<std::string> filters;
  std::string out;
};

PlumbingForest load(const Config& c) {
  if (!c.chain_spec.empty()) {
    std::vector<std::int64_t> w;
    std::stringstream ss(c.chain_spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      try {
        w.push_back(std::stoll(item, &used));
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size()) throw std::invalid_argument("--chain: not an integer: '" + item + "'");
    }
    if (w.empty()) throw std::invalid_argument("--chain: no weights given");
    return chain(w);
  }
  if (c.file.empty()) throw std::invalid_argument("no input: give a graph file or --chain");
  std::string text;
  if (c.file == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(c.file);
    if (!in) throw std::invalid_argument("cannot open " + c.file);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_forest_auto(text);
}

EngineOptions engine_options(const Config& c) { return {c.budget, c.threads}; }

std::string list(const std::vector<Rational>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i]);
  return s + "}";
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

// --- subcommands --------------------------------------------------------------------

int cmd_check(const Config& c) {
  const PlumbingForest f = load(c);
  const CheckSummary s = check_summary(f, c.budget);
  if (c.dot) {
    std::cout << forest_dot(f);
  } else if (c.json) {
    print_json(check_json(s));
  } else {
    std::cout << "vertices: " << f.size() << "\nnegdef: " << (s.negdef ? "yes" : "no") << "\ndet: " << s.det
              << "\nh1: " << s.h1 << "\nspinc: " << (s.spinc ? std::to_string(*s.spinc) : std::string("n/a"))
              << "\nminimal: " << (s.minimal ? "yes" : "no") << '\n';
  }
  return kOk;
}

Json relations_json(const QFormContext& ctx, const BasicSet& basics, std::int64_t expansion) {
  Json out = Json::array();
  for (const auto& cls : basics.classes)
    for (std::size_t i = 0; i < cls.basics.size(); ++i)
      for (std::size_t j = i + 1; j < cls.basics.size(); ++j) {
        const MinimalRelation r = minimal_relation(cls.basics[i], cls.basics[j], ctx, expansion);
        out.push_back({{"k1", char_vector_json(r.k1)},
                       {"k2", char_vector_json(r.k2)},
                       {"n", static_cast<std::int64_t>(r.n)},
                       {"m", static_cast<std::int64_t>(r.m)}});
      }
  return out;
}

int cmd_invariants(const Config& c) {
  const QFormContext ctx(load(c));
  ctx.require_negative_definite("invariants");
  const EngineOptions opts = engine_options(c);
  const BasicSet basics = basic_vectors(ctx, opts);
  const bool rational = basics.classes[basics.canonical].basics.size() == 1;
  const LSpaceVerdict verdict = is_lspace(ctx, basics, ar_status(ctx, c.ar_bound, opts));
  const auto ds = d_invariants(ctx, basics);
  const std::int64_t expansion = c.expansion < 0 ? default_expansion(ctx) : c.expansion;
  const Json relations = relations_json(ctx, basics, expansion);
  const HfTable table = hf_summary(ctx, basics, {c.max_u});
  if (c.json) {
    print_json({{"graph", forest_json(ctx.forest())},
                {"det", static_cast<std::int64_t>(ctx.det())},
                {"basic", basic_json(basics)},
                {"verdict", verdict_json(verdict, rational)},
                {"d", dinv_json(ds)},
                {"relations", relations},
                {"hf", hf_json(table, verdict.certified)},
                {"parameters", {{"max_u", c.max_u}, {"expansion", expansion}, {"budget", c.budget}}}});
    return kOk;
  }
  std::cout << "det: " << ctx.det() << "\nspinc: " << verdict.spinc << "\nbasic: " << verdict.basic
            << "\nrational: " << (rational ? "yes" : "no") << "\nlspace: " << (verdict.lspace ? "yes" : "no")
            << (verdict.certified ? " (certified)" : " (combinatorial)") << "\nar: ";
  if (verdict.ar.found)
    std::cout << "yes, vertex " << ctx.forest().vertex(verdict.ar.vertex).id << " decreased by " << verdict.ar.decrease;
  else
    std::cout << "unknown up to " << verdict.ar.bound;
  std::cout << "\nd: " << list(d_multiset(ds)) << "\nreduced rank: " << table.reduced_rank() << '\n';
  for (const auto& r : relations)
    std::cout << "relation: " << r["k1"].dump() << " " << r["k2"].dump() << " n=" << r["n"] << " m=" << r["m"] << '\n';
  return kOk;
}

int cmd_basic(const Config& c) {
  const QFormContext ctx(load(c));
  const BasicSet basics = basic_vectors(ctx, engine_options(c));
  if (c.dot) {
    std::cout << forest_dot(ctx.forest(), &basics);
  } else if (c.json) {
    print_json(basic_json(basics));
  } else {
    std::cout << "box: " << basics.box_size << "\nspinc: " << basics.classes.size() << "\nbasic: " << basics.total_basic()
              << '\n';
    for (const auto& cls : basics.classes) {
      std::cout << "class " << cls.spinc.representative.str() << ":";
      for (const auto& k : cls.basics) std::cout << ' ' << k.str();
      std::cout << '\n';
    }
  }
  return kOk;
}

int cmd_dinv(const Config& c) {
  const QFormContext ctx(load(c));
  const auto ds = d_invariants(ctx, engine_options(c));
  if (c.json) {
    print_json(dinv_json(ds));
  } else {
    for (const auto& d : ds) std::cout << d.spinc.representative.str() << ": " << to_string(d.d) << '\n';
  }
  return kOk;
}

int cmd_hf(const Config& c) {
  const QFormContext ctx(load(c));
  const EngineOptions opts = engine_options(c);
  const BasicSet basics = basic_vectors(ctx, opts);
  const bool certified = ar_status(ctx, c.ar_bound, opts).found;
  const HfTable table = truncated_classes(ctx, basics, {c.max_u});
  if (c.dot) {
    std::cout << hf_table_dot(table);
  } else if (c.json) {
    print_json(hf_json(table, certified));
  } else {
    std::cout << "level: " << (certified ? "hf" : "comb") << "\nreduced rank: " << table.reduced_rank() << '\n';
    for (const auto& cls : table.classes) {
      std::cout << "class " << cls.spinc.representative.str() << ": bottom " << to_string(cls.bottom) << ", counts";
      for (const auto& dc : cls.counts) std::cout << ' ' << to_string(dc.degree) << ':' << dc.count;
      std::cout << (cls.converged ? "" : " (unconverged)") << '\n';
    }
  }
  if (!table.converged()) {
    std::cerr << "error: the degree window did not reach the tower; raise --max-u\n";
    return kBudget;
  }
  return kOk;
}

int cmd_reduce(const Config& c) {
  const PlumbingForest f = load(c);
  std::mt19937_64 rng(c.seed);
  const Reduction r = reduce(f, c.seeded ? &rng : nullptr);
  if (c.dot) {
    std::cout << forest_dot(r.forest);
  } else if (c.json) {
    print_json(reduction_json(r));
  } else {
    std::cout << "moves: " << r.trace.moves.size() << '\n';
    for (const auto& m : r.trace.moves) std::cout << "blow down " << m.removed << '\n';
    for (const auto& v : r.forest.vertices()) std::cout << "vertex " << v.id << ' ' << v.weight << '\n';
    for (const auto& [a, b] : r.forest.edges())
      std::cout << "edge " << r.forest.vertex(a).id << ' ' << r.forest.vertex(b).id << '\n';
  }
  return kOk;
}

int cmd_census(const Config& c) {
  CensusOptions opts;
  opts.max_vertices = c.max_vertices ? c.max_vertices : 4;
  opts.min_weight = c.min_weight ? c.min_weight : -3;
  opts.box_budget = std::min<std::uint64_t>(c.budget, kCensusBoxBudget);
  for (const auto& name : c.filters) {
    auto f = parse_filter(name);
    if (!f) throw std::invalid_argument("unknown filter '" + name + "'");
    opts.filters.push_back(*f);
  }
  const CensusResult result = census_scan(opts);
  if (c.out.empty()) {
    write_census_jsonl(std::cout, result);
  } else {
    std::ofstream out(c.out);
    if (!out) throw std::invalid_argument("cannot write " + c.out);
    write_census_jsonl(out, result);
  }
  std::cerr << "scanned " << result.scanned << ", kept " << result.records.size() << ", over budget "
            << result.skipped_budget << '\n';
  return kOk;
}

int cmd_verify_e8(const Config& c) {
  const E8Report rep = verify_e8_unique(c.max_vertices ? c.max_vertices : 9);
  if (c.json) {
    print_json({{"passed", rep.passed},
                {"max_vertices", rep.max_vertices},
                {"trees", rep.trees_scanned},
                {"negdef", rep.negdef},
                {"unimodular", rep.unimodular},
                {"e8", rep.e8_code},
                {"message", rep.message}});
  } else {
    std::cout << (rep.passed ? "PASS" : "FAIL") << ": " << rep.message << " (" << rep.trees_scanned << " trees, "
              << rep.negdef << " negative definite)\n";
  }
  return rep.passed ? kOk : kVerifyFailed;
}

int cmd_verify_classification(const Config& c) {
  const ClassificationReport rep =
      verify_classification(c.max_vertices ? c.max_vertices : 8, c.min_weight ? c.min_weight : -5,
                            std::min<std::uint64_t>(c.budget, kCensusBoxBudget));
  if (c.json) {
    print_json({{"passed", rep.passed},
                {"max_vertices", rep.max_vertices},
                {"min_weight", rep.min_weight},
                {"graphs", rep.graphs},
                {"unimodular", rep.unimodular},
                {"rational_unimodular", rep.rational_unimodular},
                {"case1_checked", rep.case1_checked},
                {"case2_checked", rep.case2_checked},
                {"skipped_budget", rep.skipped_budget},
                {"counterexamples", rep.counterexamples},
                {"message", rep.message}});
  } else {
    std::cout << (rep.passed ? "PASS" : "FAIL") << ": " << rep.message << "\n  unimodular " << rep.unimodular
              << ", rational unimodular " << rep.rational_unimodular << ", with -1 vertex " << rep.case1_checked
              << ", no -1 with a weight <= -3 and |det| = 1 " << rep.case2_checked << '\n';
    for (const auto& ce : rep.counterexamples) std::cout << "  " << ce << '\n';
  }
  return rep.passed ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heegaard Floer invariants of negative-definite plumbed 3-manifolds"};
  app.require_subcommand(1);
  Config c;

  auto graph_input = [&](CLI::App* sub) {
    sub->add_option("file", c.file, "graph file ('-' for stdin)");
    sub->add_option("--chain", c.chain_spec, "inline chain, e.g. -2,-3,-2");
    sub->add_flag("--json", c.json, "JSON output");
    sub->add_option("--budget", c.budget, "box size budget")->check(CLI::PositiveNumber);
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check", "definiteness, determinant, |H1|, Spin^c count, minimality");
  graph_input(check);
  check->add_flag("--dot", c.dot, "DOT diagram of the graph");

  auto* inv = app.add_subcommand("invariants", "basic vectors, verdicts, d-invariants and the graded summary");
  graph_input(inv);
  inv->add_option("--max-u", c.max_u, "U-power window")->check(CLI::PositiveNumber);
  inv->add_option("--expansion", c.expansion, "box margin for minimal relations")->check(CLI::NonNegativeNumber);
  inv->add_option("--ar-bound", c.ar_bound, "largest weight decrease tried")->check(CLI::PositiveNumber);

  auto* basic = app.add_subcommand("basic", "basic vectors per Spin^c class");
  graph_input(basic);
  basic->add_flag("--dot", c.dot, "DOT diagram with the basic vectors");

  auto* dinv = app.add_subcommand("dinv", "d-invariants per Spin^c class");
  graph_input(dinv);

  auto* hf = app.add_subcommand("hf", "degree/count table of the graded module");
  graph_input(hf);
  hf->add_option("--max-u", c.max_u, "U-power window")->check(CLI::PositiveNumber);
  hf->add_option("--ar-bound", c.ar_bound, "largest weight decrease tried")->check(CLI::PositiveNumber);
  hf->add_flag("--dot", c.dot, "DOT table");

  auto* red = app.add_subcommand("reduce", "blow down -1 vertices of degree <= 2");
  graph_input(red);
  red->add_flag("--dot", c.dot, "DOT diagram of the reduced graph");
  red->add_option("--seed", c.seed, "random blow-down order")->each([&](const std::string&) { c.seeded = true; });

  auto* census = app.add_subcommand("census", "classify all small weighted trees (JSON lines)");
  census->add_option("--max-vertices", c.max_vertices, "largest tree")->check(CLI::Range(1, 12));
  census->add_option("--min-weight", c.min_weight, "most negative weight")->check(CLI::Range(-1000, -1));
  census->add_option("--filter", c.filters, "zhs, rational, nonrational, lspace, nonlspace, minimal, chain");
  census->add_option("--out", c.out, "output file (default stdout)");
  census->add_option("--budget", c.budget, "box size budget per graph")->check(CLI::PositiveNumber);

  auto* ve8 = app.add_subcommand("verify-e8", "E8 is the only unimodular all -2 tree");
  ve8->add_option("--max-vertices", c.max_vertices, "largest tree (>= 8)")->check(CLI::Range(8, 12));
  ve8->add_flag("--json", c.json, "JSON output");

  auto* vcl = app.add_subcommand("verify-classification", "rational/unimodular/-1 vertex checks on minimal trees");
  vcl->add_option("--max-vertices", c.max_vertices, "largest tree")->check(CLI::Range(1, 12));
  vcl->add_option("--min-weight", c.min_weight, "most negative weight")->check(CLI::Range(-1000, -1));
  vcl->add_option("--budget", c.budget, "box size budget per graph")->check(CLI::PositiveNumber);
  vcl->add_flag("--json", c.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*check) return cmd_check(c);
    if (*inv) return cmd_invariants(c);
    if (*basic) return cmd_basic(c);
    if (*dinv) return cmd_dinv(c);
    if (*hf) return cmd_hf(c);
    if (*red) return cmd_reduce(c);
    if (*census) return cmd_census(c);
    if (*ve8) return cmd_verify_e8(c);
    if (*vcl) return cmd_verify_classification(c);
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const BoundExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const Unconverged& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kInvalid;
}
