// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "plumb/census.hpp"
#include "plumb/errors.hpp"
#include "plumb/relations.hpp"
#include "plumb/report.hpp"

using namespace plumb;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run_command(const std::string& cmd) {
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(PLUMB_TEST_DATA) + "/" + name; }

std::vector<std::int64_t> vec(const CharVector& k) { return {k.values().begin(), k.values().end()}; }

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok && secs >= limit_seconds) {
    o.ok = false;
    o.detail = "took longer than " + std::to_string(limit_seconds) + " s";
  }
  if (!o.ok) ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << timing << ")";
  if (!o.detail.empty()) std::cout << " - " << o.detail;
  std::cout << std::endl;
}

// --- 1 ---------------------------------------------------------------------------

Outcome e8_end_to_end() {
  Outcome o;
  const QFormContext ctx(e8_forest());
  o.require(ctx.det() == 1, "det != 1");
  const auto basics = basic_vectors(ctx);
  o.require(basics.classes.size() == 1, "expected one Spin^c class");
  const CharVector zero(std::vector<std::int64_t>(8, 0));
  o.require(basics.total_basic() == 1 && basics.classes[0].basics.front() == zero, "basic set is not {0}");
  o.require(is_rational(ctx), "not rational");
  const auto verdict = is_lspace(ctx, basics, ar_status(ctx));
  o.require(verdict.lspace && verdict.certified, "not a certified L-space");
  // (K^2 + |G|)/4 on the unique basic vector K = 0.
  const Rational expect_d = (oracle::square(oracle::inverse(oracle::form(e8_forest())), vec(zero)) + 8) / 4;
  o.require(expect_d == 2, "oracle arithmetic");
  o.require(d_multiset(d_invariants(ctx, basics)) == std::vector<Rational>{expect_d}, "d != 2");
  o.require(hf_summary(ctx, basics).reduced_rank() == 0, "reduced rank != 0");

  const Run cli = run_command(std::string(PLUMB_CLI) + " invariants " + data("e8.graph") + " --json");
  o.require(cli.exit_code == 0, "CLI exit code " + std::to_string(cli.exit_code));
  if (cli.exit_code == 0) {
    const Json j = Json::parse(cli.out);
    o.require(j["det"] == 1, "CLI det");
    o.require(j["verdict"]["lspace"] == "yes" && j["verdict"]["certified"] == true, "CLI L-space verdict");
    o.require(j["verdict"]["rational"] == true, "CLI rational");
    o.require(j["verdict"]["basic"] == 1 && j["verdict"]["spinc"] == 1, "CLI counts");
    o.require(j["d"].size() == 1 && j["d"][0]["d"] == Json::array({"2", "1"}), "CLI d");
    o.require(j["hf"]["reduced_rank"] == 0, "CLI reduced rank");
  }
  o.detail = o.ok ? "det 1, 1 class, basic {0}, rational, certified L-space, d = 2, reduced rank 0" : o.detail;
  return o;
}

// --- 2 ---------------------------------------------------------------------------

Outcome lens_calibration() {
  Outcome o;
  std::vector<std::vector<std::int64_t>> graphs{{-2}, {-3}};
  for (std::size_t n = 2; n <= 8; ++n) graphs.emplace_back(n, -2);
  double worst = 0;
  for (const auto& w : graphs) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::int64_t> a;
    for (auto x : w) a.push_back(-x);
    const auto [p, q] = oracle::continued_fraction(a);
    std::vector<Rational> expect, lib;
    for (std::int64_t i = 0; i < p; ++i) {
      expect.push_back(-oracle::lens_d(p, q, i));
      lib.push_back(-lens_d_oracle(p, q, i));
    }
    std::sort(expect.begin(), expect.end());
    std::sort(lib.begin(), lib.end());
    const auto got = d_multiset(d_invariants(QFormContext(chain(w))));
    const std::string name = "L(" + std::to_string(p) + "," + std::to_string(q) + ")";
    o.require(lib == expect, name + ": library recursion disagrees with the test recursion");
    o.require(got == expect, name + ": d multiset differs");
    worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  o.require(worst < 1.0, "a single graph took over 1 s");
  if (o.ok) o.detail = "L(2,1), L(3,1), L(n+1,n) for n = 2..8 exact; slowest " + std::to_string(worst) + " s";
  return o;
}

// --- 3 ---------------------------------------------------------------------------

Outcome brieskorn() {
  Outcome o;
  const auto f = parse_forest_auto([] {
    std::ifstream in(data("star237.graph"));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }());
  const QFormContext ctx(f);
  o.require(ctx.det() == 1, "det != 1");
  const auto basics = basic_vectors(ctx);
  o.require(basics.total_basic() == 2, "basic count != 2");
  o.require(!is_rational(ctx), "rational");
  o.require(!is_lspace(ctx, basics, ar_status(ctx)).lspace, "L-space");
  o.require(d_multiset(d_invariants(ctx, basics)) == std::vector<Rational>{0}, "d != 0");
  const auto table = hf_summary(ctx, basics);
  o.require(table.reduced_rank() == 1, "reduced rank != 1");
  o.require(table.classes[0].degree_violations == 0, "degree violations");
  // The same table from the brute-force state graph: two basic vectors merge above level 0.
  const auto& b = basics.classes[0].basics;
  oracle::StateGraph g(f, default_expansion(ctx), 8);
  const auto w = static_cast<std::int64_t>(path_weight(b[0], b[1], ctx));
  const auto level = g.merge_level(vec(b[0]), vec(b[1]), w);
  o.require(level >= 1, "brute force merges the basic vectors at level 0");
  o.require(minimal_relation(b[0], b[1], ctx).n == level, "minimal relation disagrees with brute force");
  if (o.ok) o.detail = "det 1, 2 basic, non-rational, not an L-space, d = 0, reduced rank 1";
  return o;
}

// --- 4, 5 ------------------------------------------------------------------------

Outcome e8_unique() {
  Outcome o;
  const auto rep = verify_e8_unique(9);
  o.require(rep.passed, rep.message);
  const Run cli = run_command(std::string(PLUMB_CLI) + " verify-e8 --max-vertices 9");
  o.require(cli.exit_code == 0 && cli.out.find("PASS") != std::string::npos, "CLI verify-e8 did not pass");
  if (o.ok) o.detail = std::to_string(rep.trees_scanned) + " trees, " + std::to_string(rep.negdef) + " negative definite";
  return o;
}

Outcome classification() {
  Outcome o;
  const auto rep = verify_classification(8, -5);
  o.require(rep.passed, rep.message);
  if (o.ok)
    o.detail = std::to_string(rep.graphs) + " minimal trees, " + std::to_string(rep.unimodular) + " unimodular, " +
               std::to_string(rep.rational_unimodular) + " rational unimodular, " + std::to_string(rep.case1_checked) +
               " with a -1 vertex";
  return o;
}

// --- 6 ---------------------------------------------------------------------------

Outcome oracle_equivalence() {
  Outcome o;
  constexpr std::int64_t kMaxA = 8;
  std::set<std::string> seen;
  std::size_t graphs = 0, basic_pairs = 0, box_pairs = 0, compared = 0, edges = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<Edge> all;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
    for (std::size_t mask = 0; mask < (std::size_t{1} << all.size()); ++mask) {
      std::vector<Edge> es;
      for (std::size_t i = 0; i < all.size(); ++i)
        if (mask >> i & 1) es.push_back(all[i]);
      if (es.size() >= n) continue;
      std::vector<std::int64_t> w(n, -4);
      for (;;) {
        std::optional<PlumbingForest> f;
        try {
          f = PlumbingForest::from_weights(w, es);
        } catch (const GraphError&) {
          break;  // the edge set has a cycle
        }
        if (oracle::sylvester_negdef(oracle::form(*f)) && seen.insert(canonical_code(*f)).second) {
          ++graphs;
          const QFormContext ctx(*f);
          const std::int64_t b = default_expansion(ctx);
          oracle::StateGraph g(*f, b, kMaxA);
          edges += g.edges;
          o.require(g.degree_mismatches == 0, "degree not single-valued on " + canonical_code(*f));
          const auto basics = basic_vectors(ctx);
          const auto table = truncated_classes(ctx, basics);
          for (const auto& c : table.classes)
            o.require(c.degree_violations == 0, "truncated table degree violation on " + canonical_code(*f));

          auto compare = [&](const CharVector& k1, const CharVector& k2, bool basic) {
            const auto pw = static_cast<std::int64_t>(path_weight(k1, k2, ctx));
            const std::int64_t seen_level = g.merge_level(vec(k1), vec(k2), pw);
            const std::string where = canonical_code(*f) + " " + k1.str() + " " + k2.str();
            try {
              const auto r = minimal_relation(k1, k2, ctx, b);
              o.require(r.m - r.n == pw, "m - n != path weight at " + where);
              // The brute force only sees relations whose exponents stay within kMaxA.
              if (seen_level >= 0) {
                ++compared;
                o.require(r.n == seen_level, "merge level differs at " + where);
              } else {
                o.require(r.n > kMaxA || r.m > kMaxA, "brute force misses a relation within range at " + where);
              }
              if (basic) o.require(seen_level >= 0, "basic pair outside the brute-force range at " + where);
            } catch (const BoundExceeded&) {
              o.require(seen_level < 0, "bound exceeded but brute force merges at " + where);
            }
          };
          const auto part = spinc_partition(ctx);
          std::vector<std::vector<CharVector>> sample(part.classes.size());
          for (const auto& k : char_box(ctx)) {
            auto& s = sample[*part.class_of(k.values())];
            if (s.size() < 8) s.push_back(k);
          }
          for (const auto& c : basics.classes)
            for (const auto& k1 : c.basics)
              for (const auto& k2 : c.basics) {
                ++basic_pairs;
                compare(k1, k2, true);
              }
          for (const auto& s : sample)
            for (const auto& k1 : s)
              for (const auto& k2 : s) {
                ++box_pairs;
                compare(k1, k2, false);
              }
        }
        std::size_t i = n;
        while (i > 0 && w[i - 1] == -1) w[--i] = -4;
        if (i == 0) break;
        ++w[i - 1];
      }
    }
  }
  o.require(graphs > 0, "no graphs");
  if (o.ok)
    o.detail = std::to_string(graphs) + " forests, " + std::to_string(basic_pairs) + " basic pairs, " +
               std::to_string(box_pairs) + " box pairs (" + std::to_string(compared) + " within a <= 8), " +
               std::to_string(edges) + " relation edges";
  return o;
}

// --- 7 ---------------------------------------------------------------------------

Outcome properties() {
  Outcome o;
  const Run r = run_command(std::string(PLUMB_PROPERTIES) + " --no-colors=true 2>&1");
  o.require(r.exit_code == 0, "property suite exit code " + std::to_string(r.exit_code));
  const auto pos = r.out.find("[doctest] assertions:");
  const std::string summary = pos == std::string::npos ? "" : r.out.substr(pos, r.out.find('\n', pos) - pos);
  o.require(summary.find("0 failed") != std::string::npos, "failures reported: " + summary);
  if (o.ok) o.detail = summary.substr(std::string("[doctest] ").size());
  return o;
}

}  // namespace

int main() {
  criterion(1, "E8 end-to-end", 1.0, e8_end_to_end);
  criterion(2, "lens calibration", 9.0, lens_calibration);
  criterion(3, "Sigma(2,3,7) witness", 5.0, brieskorn);
  criterion(4, "verify-e8 --max-vertices 9", 10.0, e8_unique);
  criterion(5, "verify-classification --max-vertices 8 --min-weight -5", 300.0, classification);
  criterion(6, "minimal relations against brute-force union-find", 120.0, oracle_equivalence);
  criterion(7, "property suites", 600.0, properties);
  return failures == 0 ? 0 : 1;
}
