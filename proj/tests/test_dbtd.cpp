#include <doctest.h>

#include <algorithm>
#include <random>

#include "mds/dbtd.hpp"
#include "mds/order.hpp"
#include "mds/pipeline.hpp"

using namespace mds;

namespace {

TreeDecomposition make_td(std::vector<std::vector<int>> bags, std::vector<std::pair<int, int>> edges, int n) {
  TreeDecomposition td;
  td.bags = std::move(bags);
  td.edges = std::move(edges);
  td.n_vertices = n;
  return td;
}

std::vector<std::string> bag_names(const NiceDBTD& d, int u, const Graph& g) {
  std::vector<std::string> s;
  for (int x : d.tree.nodes[u].bag) s.push_back(d.name_string(x, g));
  std::sort(s.begin(), s.end());
  return s;
}

int find_kind(const NiceDBTD& d, NodeKind k) {
  for (std::size_t u = 0; u < d.tree.nodes.size(); ++u)
    if (d.tree.nodes[u].kind == k) return static_cast<int>(u);
  return -1;
}

// Random decomposition that is disjoint-branch at bag 0, with edges only inside bags.
std::pair<Graph, TreeDecomposition> random_dbtd(std::mt19937_64& rng, int nodes, int width) {
  std::vector<std::vector<int>> bags{{}};
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> free_of(1);  // vertices of a bag not yet handed to a child
  int n = 0;
  for (int k = 0; k <= width; ++k) bags[0].push_back(n++);
  free_of[0] = bags[0];
  for (int t = 1; t < nodes; ++t) {
    int p = std::uniform_int_distribution<int>(0, t - 1)(rng);
    std::vector<int> bag;
    auto& pool = free_of[p];
    std::shuffle(pool.begin(), pool.end(), rng);
    int take = std::uniform_int_distribution<int>(0, static_cast<int>(pool.size()))(rng);
    bag.assign(pool.begin(), pool.begin() + take);
    pool.erase(pool.begin(), pool.begin() + take);
    while (static_cast<int>(bag.size()) < width + 1 && std::bernoulli_distribution(0.7)(rng)) bag.push_back(n++);
    if (bag.empty()) bag.push_back(n++);
    std::sort(bag.begin(), bag.end());
    bags.push_back(bag);
    free_of.push_back(bag);
    edges.emplace_back(p, t);
  }
  Graph g(n);
  for (const auto& bag : bags)
    for (std::size_t i = 0; i < bag.size(); ++i)
      for (std::size_t j = i + 1; j < bag.size(); ++j)
        if (!g.adjacent(bag[i], bag[j]) && std::bernoulli_distribution(0.6)(rng)) g.add_edge(bag[i], bag[j]);
  return {g, make_td(bags, edges, n)};
}

}  // namespace

TEST_CASE("join-free decompositions are left alone") {
  Graph p = path_graph(4);
  auto nice = make_nice(make_td({{0, 1}, {1, 2}, {2, 3}}, {{0, 1}, {1, 2}}, 4), p);
  auto d = transform_to_dbjt(nice, p);
  CHECK(d.names.size() == 4);
  CHECK(d.triples.empty());
  CHECK(d.tree.size() == nice.size());
  CHECK(validate_dbtd(d, nice, p).ok());
  for (std::size_t u = 0; u < nice.size(); ++u) CHECK(d.tree.nodes[d.origin_node[u]].bag == nice.nodes[u].bag);
}

TEST_CASE("a join over {a,b} becomes the copy chain") {
  // a=0, b=1, c=2 on the left, d=3 on the right.
  Graph g = parse_graph("c names a b c d\np tw 4 5\n1 2\n1 3\n2 3\n1 4\n2 4\n");
  auto nice = make_nice(make_td({{0, 1}, {0, 1, 2}, {0, 1, 3}}, {{0, 1}, {0, 2}}, 4), g);
  auto d = transform_to_dbjt(nice, g);
  REQUIRE(validate_dbtd(d, nice, g).ok());
  int dj = find_kind(d, NodeKind::DisjointJoin);
  REQUIRE(dj >= 0);
  CHECK(bag_names(d, dj, g) == std::vector<std::string>{"a_0", "a_1", "b_0", "b_1"});
  int up = d.tree.nodes[dj].parent, between_low = 0;
  while (d.tree.nodes[up].bag.size() != 6) {
    ++between_low;
    up = d.tree.nodes[up].parent;
  }
  CHECK(bag_names(d, up, g) == std::vector<std::string>{"a", "a_0", "a_1", "b", "b_0", "b_1"});
  int between_high = 0;
  int top = d.tree.nodes[up].parent;
  while (d.tree.nodes[top].bag.size() != 2) {
    ++between_high;
    top = d.tree.nodes[top].parent;
  }
  CHECK(bag_names(d, top, g) == std::vector<std::string>{"a", "b"});
  CHECK(between_high == 3);  // 2|bag| - 1
  CHECK(between_low == 1);   // |bag| - 1
  CHECK(d.triples.size() == 2);
}

TEST_CASE("branch constraint examples") {
  CHECK(triple_satisfiable(SI, SI, SI, kFull));
  CHECK(triple_satisfiable(W1, W1, W0, kFull));
  CHECK_FALSE(triple_satisfiable(W1, W1, W1, kFull));
  CHECK(triple_satisfiable(R2, R1, R1, kFull));
  CHECK(triple_satisfiable(-1, R1, R1, kFull));
  CHECK_FALSE(triple_satisfiable(-1, SI, S0, kFull));
  CHECK(triple_satisfiable(S1, -1, -1, kFull));
  int valid = 0;
  for (int a = 0; a < kLabels; ++a)
    for (int b = 0; b < kLabels; ++b)
      for (int c = 0; c < kLabels; ++c) valid += valid_triple(a, b, c);
  CHECK(valid == 14);
  // The parent label is a function of the copies' labels.
  for (int b = 0; b < kLabels; ++b)
    for (int c = 0; c < kLabels; ++c) {
      int parents = 0;
      for (int a = 0; a < kLabels; ++a) parents += valid_triple(a, b, c);
      CHECK(parents <= 1);
    }
}

TEST_CASE("effective width counts") {
  Graph p = path_graph(3);
  auto nice = make_nice(make_td({{0, 1}, {1, 2}}, {{0, 1}}, 3), p);
  auto d = transform_to_dbjt(nice, p);
  std::vector<Domain> dom(d.names.size(), kFull);
  for (std::size_t u = 0; u < d.tree.size(); ++u) {
    double k = constrained_labelings(d, static_cast<int>(u), dom);
    CHECK(k == doctest::Approx(std::pow(8.0, static_cast<double>(d.tree.nodes[u].bag.size()))));
  }
  CHECK(effective_width(d, dom) == 2);

  // A star forces a join over the centre: the bag {v, v0, v1} admits the 14 valid triples.
  Graph star = parse_graph("p tw 3 2\n1 2\n1 3\n");
  auto sn = make_nice(make_td({{0}, {0, 1}, {0, 2}}, {{0, 1}, {0, 2}}, 3), star);
  auto sd = transform_to_dbjt(sn, star);
  std::vector<Domain> sdom(sd.names.size(), kFull);
  bool seen = false;
  for (std::size_t u = 0; u < sd.tree.size(); ++u) {
    CHECK(constrained_labelings(sd, static_cast<int>(u), sdom) ==
          doctest::Approx(constrained_labelings_enumerative(sd, static_cast<int>(u), sdom)));
    if (sd.tree.nodes[u].bag.size() == 3) {
      CHECK(constrained_labelings_enumerative(sd, static_cast<int>(u), sdom) == doctest::Approx(14));
      seen = true;
    }
  }
  CHECK(seen);
  CHECK(effective_width(sd, sdom) <= 2);
}

TEST_CASE("analytic and enumerative counts agree on random decompositions") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 25; ++t) {
    Graph g = erdos_renyi(3 + t % 8, 0.35, rng);
    auto nice = make_nice(min_fill_td(g), g);
    auto d = transform_to_dbjt(nice, g);
    for (Domain base : {kFull, static_cast<Domain>(kSigma | kOmega)}) {
      std::vector<Domain> dom(d.names.size(), base);
      for (std::size_t u = 0; u < d.tree.size(); ++u) {
        if (d.tree.nodes[u].bag.size() > 6) continue;
        CHECK(constrained_labelings(d, static_cast<int>(u), dom) ==
              doctest::Approx(constrained_labelings_enumerative(d, static_cast<int>(u), dom)));
      }
    }
  }
}

TEST_CASE("transform_to_dbjt passes validation on random partial k-trees") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    int k = 1 + t % 3;
    auto gt = partial_ktree(k + 1 + t, k, 0.7, rng);
    auto nice = make_nice(gt.td, gt.graph);
    auto d = transform_to_dbjt(nice, gt.graph);
    auto rep = validate_dbtd(d, nice, gt.graph);
    CHECK(rep.ok());
    std::vector<Domain> dom(d.names.size(), kFull);
    CHECK(effective_width(d, dom) <= 2 * gt.td.width());
    auto order = compute_order(d);
    CHECK(validate_order(d, order).ok());
  }
}

TEST_CASE("nice_dbtd_from_dbtd splits the join bag") {
  // Bag abcdg with children abe and cdf.
  Graph g = parse_graph("c names a b c d e f g\np tw 7 9\n1 2\n3 4\n1 5\n2 5\n3 6\n4 6\n1 7\n3 7\n2 4\n");
  auto td = make_td({{0, 1, 2, 3, 6}, {0, 1, 4}, {2, 3, 5}}, {{0, 1}, {0, 2}}, 7);
  REQUIRE(validate_td(g, td).ok());
  auto d = nice_dbtd_from_dbtd(td, g, 0);
  CHECK(validate_nice(d.tree).ok());
  CHECK(d.names.size() == 7);
  int dj = find_kind(d, NodeKind::DisjointJoin);
  REQUIRE(dj >= 0);
  CHECK(bag_names(d, dj, g) == std::vector<std::string>{"a", "b", "c", "d"});
  const auto& ch = d.tree.nodes[dj].children;
  REQUIRE(ch.size() == 2);
  CHECK(bag_names(d, ch[0], g) == std::vector<std::string>{"a", "b"});
  CHECK(bag_names(d, ch[1], g) == std::vector<std::string>{"c", "d"});
  CHECK_THROWS(nice_dbtd_from_dbtd(make_td({{0, 1}, {0, 2}, {0, 3}}, {{0, 1}, {0, 2}}, 4), path_graph(4), 0));
}

TEST_CASE("nice_dbtd_from_dbtd keeps width on random disjoint-branch inputs") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 100; ++t) {
    auto [g, td] = random_dbtd(rng, 2 + t % 9, 1 + t % 3);
    REQUIRE(validate_td(g, td).ok());
    auto d = nice_dbtd_from_dbtd(td, g, 0);
    CHECK(validate_nice(d.tree).ok());
    CHECK(d.tree.width() == td.width());
    CHECK(validate_order(d, compute_order(d)).ok());
  }
  // Path decompositions are disjoint-branch and gain only padding.
  Graph p = path_graph(5);
  auto pd = nice_dbtd_from_dbtd(make_td({{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {{0, 1}, {1, 2}, {2, 3}}, 5), p, 0);
  CHECK(find_kind(pd, NodeKind::DisjointJoin) < 0);
  CHECK(pd.tree.width() == 1);
}

TEST_CASE("dump_dbtd") {
  Graph star = parse_graph("c names x y z\np tw 3 2\n1 2\n1 3\n");
  auto sn = make_nice(make_td({{0}, {0, 1}, {0, 2}}, {{0, 1}, {0, 2}}, 3), star);
  auto sd = transform_to_dbjt(sn, star);
  std::string dump = dump_dbtd(sd, star);
  CHECK(dump.find("kind disjoint-join bag x_0 x_1 triples (x,x_0,x_1)") != std::string::npos);
}
