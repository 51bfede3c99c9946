#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "mds/factors.hpp"
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

std::string key(std::initializer_list<std::uint8_t> ls) { return std::string(ls.begin(), ls.end()); }

const FactorOptions kAll{true, true, 0};

struct G9 {
  Graph g = parse_graph(slurp(MDS_TEST_DATA "/g9.gr"));
  TreeDecomposition td = parse_td(slurp(MDS_TEST_DATA "/g9.td"));
  std::unique_ptr<Prepared> p = prepare(plain_domination(g), &td, 0, kAll);
  int u = p->order.B[p->dbtd.top_name[2]];  // B(c)

  std::vector<int> ids(std::initializer_list<const char*> names) const {
    std::vector<int> out;
    for (const char* s : names) out.push_back(s[0] - 'a');
    return out;
  }
};

std::vector<std::string> sorted_table(const Factors& f, int u) {
  std::vector<std::string> t = f.tables[u];
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

TEST_CASE("trie membership") {
  std::vector<std::string> keys{key({S0, W0}), key({S0, R1}), key({W1, S0})};
  auto t = FactorTrie::from_sorted(keys, 2);
  CHECK(t.paths() == 3);
  CHECK(t.lookup(key({S0, R1})));
  CHECK_FALSE(t.lookup(key({S0, R2})));
  CHECK_FALSE(t.lookup(key({W0, S0})));
  CHECK(t.keys() == keys);
  trie_insert(t, key({R2, R2}));
  CHECK(trie_lookup(t, key({R2, R2})));
  trie_insert(t, key({R2, R2}));
  CHECK(t.paths() == 4);
  CHECK(t.bytes() > 0);

  auto empty_bag = FactorTrie::from_sorted({std::string()}, 0);
  CHECK(empty_bag.lookup(std::string()));
  auto none = FactorTrie::from_sorted({}, 0);
  CHECK_FALSE(none.lookup(std::string()));
}

TEST_CASE("factors of tiny graphs") {
  auto p3 = prepare(plain_domination(path_graph(3)), nullptr, 0, kAll);
  CHECK(p3->factors.root_nonempty);

  auto one = prepare(plain_domination(Graph(1)), nullptr, 0, kAll);
  const auto& tree = one->dbtd.tree;
  int below_root = tree.nodes[tree.root].children.at(0);
  const auto& table = one->factors.tables[below_root];
  CHECK(std::find(table.begin(), table.end(), key({SI})) != table.end());
  CHECK(std::find(table.begin(), table.end(), key({S1})) == table.end());
  CHECK(table == semantic_factor(Graph(1), one->dbtd, one->name_dom, below_root, one->factors.bag_order[below_root]));
}

TEST_CASE("consistent subsets on the G9 node u") {
  G9 f;
  const auto& bag = f.p->factors.bag_order[f.u];
  REQUIRE(bag.size() == 3);
  auto sem = [&](std::initializer_list<std::uint8_t> phi, std::initializer_list<const char*> d) {
    return consistent_subset_semantics(f.g, f.p->dbtd, f.p->name_dom, f.u, bag, key(phi), f.ids(d));
  };
  CHECK(sem({S0, W0, W0}, {"a", "e"}));
  CHECK(sem({S0, R1, R1}, {"a", "d"}));
  CHECK(sem({W0, W1, S0}, {"c", "d"}));
  CHECK(sem({W0, S0, W1}, {"b", "d"}));
  CHECK(sem({W0, W1, W1}, {"d"}));
  CHECK_FALSE(sem({S0, W0, W0}, {"a", "d"}));
  // b <- [1]omega needs d below; with a in D, b would have two D-neighbours.
  for (std::uint8_t c = 0; c < kLabels; ++c)
    for (auto d : {std::vector<int>{0}, {0, 3}, {0, 4}, {0, 3, 4}, {0, 2, 3}})
      CHECK_FALSE(consistent_subset_semantics(f.g, f.p->dbtd, f.p->name_dom, f.u, bag, key({S0, W1, c}), d));
}

TEST_CASE("the G9 node u factor") {
  G9 f;
  const auto& fac = f.p->factors;
  // Five labelings of this node, each with a witness.
  const std::vector<std::pair<std::string, std::vector<int>>> drawn{
      {key({S0, W0, W0}), f.ids({"a", "e"})}, {key({S0, R1, R1}), f.ids({"a", "d"})},
      {key({W0, S0, W1}), f.ids({"b", "d"})}, {key({W0, W1, S0}), f.ids({"c", "d"})},
      {key({W0, W1, W1}), f.ids({"d"})}};
  for (const auto& [phi, witness] : drawn) {
    CHECK(fac.tries[f.u].lookup(phi));
    CHECK(consistent_subset_semantics(f.g, f.p->dbtd, f.p->name_dom, f.u, fac.bag_order[f.u], phi, witness));
  }
  CHECK(fac.tries[f.u].lookup(key({W0, W1, S0})));
  for (std::uint8_t b = 0; b < kLabels; ++b)
    for (std::uint8_t c = 0; c < kLabels; ++c) CHECK_FALSE(fac.tries[f.u].lookup(key({S1, b, c})));
  // The factor holds more than the drawn five, e.g. sigma_I on a witnessed by {a, d, h, i}.
  CHECK(fac.tries[f.u].lookup(key({SI, R1, R1})));
  CHECK(sorted_table(fac, f.u) == semantic_factor(f.g, f.p->dbtd, f.p->name_dom, f.u, fac.bag_order[f.u]));
  CHECK(dump_factor(fac, f.p->dbtd, f.u, f.g) == slurp(MDS_TEST_DATA "/g9_factor_u.txt"));
}

TEST_CASE("factors match the declarative semantics on random graphs") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    Graph g = erdos_renyi(1 + t % 8, 0.2 * (1 + t % 3), rng);
    auto p = prepare(plain_domination(g), nullptr, 0, kAll);
    for (std::size_t u = 0; u < p->dbtd.tree.size(); ++u) {
      if (p->dbtd.tree.nodes[u].bag.size() > 5) continue;
      CHECK(sorted_table(p->factors, static_cast<int>(u)) ==
            semantic_factor(g, p->dbtd, p->name_dom, static_cast<int>(u), p->factors.bag_order[u]));
    }
  }
}

TEST_CASE("factors respect restricted domains") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 25; ++t) {
    Hypergraph h = random_hypergraph(1 + t % 4, 1 + t % 3, rng);
    ReductionArtifact b = build_B(h);
    Graph g = b.graph;
    auto p = prepare(std::move(b), nullptr, 0, kAll);
    for (std::size_t u = 0; u < p->dbtd.tree.size(); ++u) {
      if (p->dbtd.tree.nodes[u].bag.size() > 5) continue;
      auto table = sorted_table(p->factors, static_cast<int>(u));
      CHECK(table == semantic_factor(g, p->dbtd, p->name_dom, static_cast<int>(u), p->factors.bag_order[u]));
      for (const auto& k : table)
        for (std::size_t i = 0; i < k.size(); ++i)
          CHECK(in_domain(p->name_dom[p->factors.bag_order[u][i]], static_cast<std::uint8_t>(k[i])));
    }
  }
}

TEST_CASE("factor size cap") {
  std::mt19937_64 rng(1);
  Graph g = erdos_renyi(12, 0.5, rng);
  CHECK_THROWS_AS(prepare(plain_domination(g), nullptr, 0, FactorOptions{false, false, 10}), CapError);
}
