#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "mds/enumeration.hpp"
#include "mds/oracle.hpp"
#include "mds/pipeline.hpp"

using namespace mds;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TreeDecomposition path_td(int n) {
  TreeDecomposition td;
  td.n_vertices = n;
  for (int v = 0; v + 1 < n; ++v) {
    td.bags.push_back({v, v + 1});
    if (v) td.edges.emplace_back(v - 1, v);
  }
  return td;
}

SetFamily collect(const Graph& g, const PipelineOptions& o = {}) {
  SetFamily out;
  enumerate_dominating_sets(
      g,
      [&](const std::vector<int>& d) {
        out.push_back(d);
        return true;
      },
      o);
  return out;
}

PartialLabeling labeling(const EnumContext& ctx, std::initializer_list<std::uint8_t> prefix) {
  PartialLabeling p = empty_labeling(ctx);
  for (std::uint8_t l : prefix) p.theta[p.i++] = l;
  return p;
}

}  // namespace

TEST_CASE("path v1 - v2 - v3") {
  Graph p = path_graph(3);
  CHECK(collect(p) == SetFamily{{1}, {0, 2}});
  TreeDecomposition td = path_td(3);
  PipelineOptions o;
  o.td = &td;
  CHECK(canonical(collect(p, o)) == SetFamily{{0, 2}, {1}});
}

TEST_CASE("extendability verdicts on the path") {
  Graph g = path_graph(3);
  TreeDecomposition td = path_td(3);
  auto p = prepare(plain_domination(g), &td, 0);
  REQUIRE(p->order.Q == std::vector<int>{0, 1, 2});
  const EnumContext& ctx = p->ctx;
  BruteExtendable brute(g, ctx);

  CHECK(is_extendable(ctx, empty_labeling(ctx)));
  CHECK(brute(empty_labeling(ctx)));
  CHECK(is_extendable(ctx, labeling(ctx, {SI})));
  CHECK(brute(labeling(ctx, {SI})));
  CHECK_FALSE(is_extendable(ctx, labeling(ctx, {S1})));
  CHECK_FALSE(brute(labeling(ctx, {S1})));
  CHECK_FALSE(is_extendable(ctx, labeling(ctx, {S0, W0})));
  CHECK_FALSE(brute(labeling(ctx, {S0, W0})));

  auto first = increment_labeling(ctx, empty_labeling(ctx), SI);
  REQUIRE(first.size() == 1);
  CHECK(first[0].i == 1);
  CHECK(first[0].theta[0] == SI);

  auto split = increment_labeling(ctx, labeling(ctx, {S1}), W0);
  REQUIRE(split.size() == 2);
  std::set<std::pair<int, int>> got;
  for (const auto& t : split) got.insert({t.theta[0], t.theta[1]});
  CHECK(got == std::set<std::pair<int, int>>{{S0, W0}, {S1, W0}});

  CHECK(increment_labeling(ctx, labeling(ctx, {SI}), S0).empty());
}

TEST_CASE("single vertex and edgeless graphs") {
  CHECK(collect(Graph(1)) == SetFamily{{0}});
  CHECK(collect(Graph(3)) == SetFamily{{0, 1, 2}});
  CHECK(collect(Graph(0)) == SetFamily{{}});
}

TEST_CASE("G9 order and stream") {
  Graph g = parse_graph(slurp(MDS_TEST_DATA "/g9.gr"));
  TreeDecomposition td = parse_td(slurp(MDS_TEST_DATA "/g9.td"));
  auto p = prepare(plain_domination(g), &td, 0);
  std::string q;
  for (int x : p->order.Q)
    if (!p->dbtd.is_copy(x)) q += g.name(p->dbtd.names[x].orig);
  CHECK(q == "hfagibcde");
  CHECK(validate_order(p->dbtd, p->order).ok());
  std::vector<int> bc;
  for (int x : p->dbtd.tree.nodes[p->order.B[p->dbtd.top_name[2]]].bag) bc.push_back(p->dbtd.names[x].orig);
  std::sort(bc.begin(), bc.end());
  CHECK(bc == std::vector<int>{0, 1, 2});

  PipelineOptions o;
  o.td = &td;
  o.debug = true;
  SetFamily all;
  RunResult r = enumerate_dominating_sets(
      g,
      [&](const std::vector<int>& d) {
        all.push_back(d);
        return true;
      },
      o);
  CHECK(std::find(all.begin(), all.end(), std::vector<int>{3, 5, 8}) != all.end());
  CHECK(canonical(all) == brute_minimal_dominating_sets(g));
  CHECK(r.engine.dead_branches == 0);
  CHECK(r.engine.inadmissible_prefixes == 0);
}

TEST_CASE("engine matches the oracles on random graphs") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 150; ++t) {
    Graph g = erdos_renyi(1 + t % 9, 0.2 * (1 + t % 3), rng);
    PipelineOptions o;
    o.debug = true;
    o.seed = t % 2 ? t : 0;
    SetFamily got;
    RunResult r = enumerate_dominating_sets(
        g,
        [&](const std::vector<int>& d) {
          got.push_back(d);
          return true;
        },
        o);
    std::set<std::vector<int>> distinct(got.begin(), got.end());
    CHECK(distinct.size() == got.size());
    CHECK(canonical(got) == brute_minimal_dominating_sets(g));
    CHECK(r.engine.dead_branches == 0);
    CHECK(r.engine.inadmissible_prefixes == 0);
  }
}

TEST_CASE("is_extendable agrees with brute-force extendability") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 80; ++t) {
    Graph g = erdos_renyi(1 + t % 8, 0.2 * (1 + t % 3), rng);
    auto p = prepare(plain_domination(g), nullptr, 0);
    BruteExtendable brute(g, p->ctx);
    CHECK(brute(empty_labeling(p->ctx)) == (brute.solutions() > 0));
    std::uint64_t checks = 0, disagreements = 0;
    EnumOptions eo;
    eo.on_check = [&](const PartialLabeling& theta, bool ok) {
      ++checks;
      if (brute(theta) != ok) ++disagreements;
    };
    auto res = enum_ds(p->ctx, [](const std::vector<int>&) { return true; }, eo);
    CHECK(disagreements == 0);
    CHECK(checks > 0);
    CHECK(res.emitted == brute.solutions());
  }
}

TEST_CASE("limit stops the stream") {
  PipelineOptions o;
  o.limit = 3;
  CHECK(collect(path_graph(12), o).size() == 3);
}

TEST_CASE("delay accounting") {
  for (int n : {4, 8, 16, 32, 64}) {
    PipelineOptions o;
    o.stats = true;
    o.limit = 3000;
    RunResult r = enumerate_dominating_sets(
        path_graph(n), [](const std::vector<int>&) { return true; }, o);
    const auto& d = r.engine.delay;
    CHECK(d.n == static_cast<std::size_t>(n));
    CHECK(d.gaps.size() == r.engine.emitted + (r.engine.stopped ? 0 : 1));
    CHECK(d.max_gap <= 6 * d.n * (d.w + 1) * 8);
    CHECK(d.lookups <= 2 * kLabels * d.n * d.gaps.size());
  }
  std::mt19937_64 rng(31);
  double smallest = 0;
  for (int n : {16, 32, 64}) {
    auto gt = partial_ktree(n, 3, 0.8, rng);
    PipelineOptions o;
    o.stats = true;
    o.td = &gt.td;
    o.limit = 2000;
    RunResult r = enumerate_dominating_sets(
        gt.graph, [](const std::vector<int>&) { return true; }, o);
    if (n == 16) smallest = r.engine.delay.ratio;
    CHECK(r.engine.delay.ratio <= 2 * smallest);
  }
  CHECK(format_delay(DelayReport{}).rfind("# delay", 0) == 0);
}
